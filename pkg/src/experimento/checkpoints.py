import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, Union

import numpy as np

from src.agente import ConjuntoParametros, NOMES_ARMAZENS
from src.redes import ArmazemParametros, ConfigOtimizacao, RedePolitica, carregar_checkpoint, salvar_checkpoint
from src.utils.erros import ErroCheckpoint

logger = logging.getLogger(__name__)

ARQUIVO_ESTADO = "estado.txt"
ARQUIVO_CONTAGENS = "contagens.npz"


@dataclass
class EstadoTreino:
    frames: int = 0
    episodios: int = 0
    passo_global: int = 0


def salvar_estado_treino(
    diretorio: Union[str, Path],
    parametros: ConjuntoParametros,
    estado: EstadoTreino,
    tabela_global: Dict[int, int],
) -> None:
    """
    Grava um checkpoint por rede, a tabela global de visitas e os contadores do treino.

    Parametros:
    - diretorio: Diretório 'checkpoints' da execução.
    - parametros: Armazéns de todas as redes.
    - estado: Frames, episódios e atualizações já feitos.
    - tabela_global: Contagens globais de visitas.
    """
    diretorio = Path(diretorio)
    diretorio.mkdir(parents=True, exist_ok=True)
    for nome in NOMES_ARMAZENS:
        salvar_checkpoint(parametros[nome], diretorio / f"{nome}.ckpt")
    chaves = np.fromiter(tabela_global.keys(), dtype=np.uint64, count=len(tabela_global))
    visitas = np.fromiter(tabela_global.values(), dtype=np.int64, count=len(tabela_global))
    np.savez(diretorio / ARQUIVO_CONTAGENS, chaves=chaves, visitas=visitas)
    # O estado é gravado por último e marca o checkpoint como completo
    texto = f"frames={estado.frames}\nepisodios={estado.episodios}\npasso_global={estado.passo_global}\n"
    (diretorio / ARQUIVO_ESTADO).write_text(texto, encoding="utf-8")
    logger.info("Checkpoint salvo em %s com %d frames.", diretorio, estado.frames)


def existe_checkpoint(diretorio: Union[str, Path]) -> bool:
    return (Path(diretorio) / ARQUIVO_ESTADO).exists()


def carregar_estado_treino(
    diretorio: Union[str, Path], parametros: ConjuntoParametros, tabela_global: Dict[int, int]
) -> EstadoTreino:
    """Restaura redes, acumuladores, contagens globais e contadores de um checkpoint completo."""
    diretorio = Path(diretorio)
    if not existe_checkpoint(diretorio):
        raise ErroCheckpoint(f"Nenhum checkpoint completo em '{diretorio}'.")
    for nome in NOMES_ARMAZENS:
        carregar_checkpoint(parametros[nome], diretorio / f"{nome}.ckpt")

    valores = {}
    for linha in (diretorio / ARQUIVO_ESTADO).read_text(encoding="utf-8").splitlines():
        if "=" in linha:
            chave, valor = linha.split("=", 1)
            valores[chave.strip()] = int(valor)
    try:
        estado = EstadoTreino(**valores)
    except TypeError as erro:
        raise ErroCheckpoint(f"Estado de treino inválido em '{diretorio}': {erro}") from erro

    with np.load(diretorio / ARQUIVO_CONTAGENS) as contagens:
        tabela_global.clear()
        tabela_global.update(zip(contagens["chaves"].tolist(), contagens["visitas"].tolist()))
    parametros.passo_global = estado.passo_global
    return estado


def carregar_politica(caminho: Union[str, Path], tamanho_visao: int) -> RedePolitica:
    """
    Carrega a rede de política de um checkpoint.

    Parametros:
    - caminho: Arquivo 'politica.ckpt' ou o diretório de checkpoints que o contém.
    - tamanho_visao: Lado da visão da tarefa; um checkpoint de outra arquitetura levanta ErroCheckpoint.

    Retorna:
    - A rede de política em modo de avaliação.
    """
    caminho = Path(caminho)
    if caminho.is_dir():
        caminho = caminho / "politica.ckpt"
    if not caminho.exists():
        raise ErroCheckpoint(f"Checkpoint '{caminho}' não encontrado.")
    armazem = ArmazemParametros("politica", RedePolitica(tamanho_visao), ConfigOtimizacao(), treinavel=False)
    carregar_checkpoint(armazem, caminho)
    return armazem.modulo.eval()
