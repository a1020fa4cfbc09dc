import logging
from pathlib import Path
from typing import Optional, Tuple, Union

import numpy as np
import torch
from torch.nn import functional as F

from src.agente import semente_ambiente
from src.ambiente import AmbienteGrade, Cor, EspecificacaoTarefa
from src.intrinseca import EscritorTracos, RegistroTraco
from src.redes import RedePolitica
from src.utils.erros import ErroConfiguracao

from .checkpoints import carregar_politica

logger = logging.getLogger(__name__)

# Desloca as sementes de avaliação para longe das usadas no treino
DESLOCAMENTO_SEMENTE_AVALIACAO = 10 ** 9


@torch.no_grad()
def avaliar(
    checkpoint: Optional[Union[str, Path]],
    tarefa: EspecificacaoTarefa,
    episodios: int,
    cores: Optional[Tuple[Cor, ...]] = None,
    semente: int = 0,
    caminho_tracos: Optional[Union[str, Path]] = None,
) -> Tuple[float, float]:
    """
    Avalia uma política em instâncias novas da tarefa, amostrando as ações de π.

    Parametros:
    - checkpoint: Arquivo ou diretório do checkpoint da política; None avalia a política uniforme.
    - tarefa: Especificação da tarefa.
    - episodios: Número de episódios, >= 1.
    - cores: Conjunto de cores das paredes e do objetivo, como as cores de teste do ColorGen.
    - semente: Semente da avaliação.
    - caminho_tracos: Se definido, grava um registro por passo neste CSV.

    Retorna:
    - Média e desvio padrão populacional dos retornos.
    """
    if episodios < 1:
        raise ErroConfiguracao("A avaliação exige ao menos um episódio.")
    if cores is not None:
        tarefa = tarefa.com_cores(cores)

    politica: Optional[RedePolitica] = None
    if checkpoint is not None:
        politica = carregar_politica(checkpoint, tarefa.tamanho_visao)
    gerador = torch.Generator().manual_seed(semente_ambiente(semente, DESLOCAMENTO_SEMENTE_AVALIACAO + 1))
    ambiente = AmbienteGrade(tarefa, semente_ambiente(semente, DESLOCAMENTO_SEMENTE_AVALIACAO))
    escritor = EscritorTracos(caminho_tracos) if caminho_tracos is not None else None

    retornos = []
    for episodio in range(episodios):
        observacao, _ = ambiente.reset()
        estado = politica.estado_inicial(1) if politica is not None else None
        retorno, feito, registros = 0.0, False, []
        while not feito:
            if politica is not None:
                logits, _, estado = politica(torch.from_numpy(observacao[None]), estado)
            else:
                logits = torch.zeros(1, ambiente.action_space.n)
            acao = int(torch.multinomial(F.softmax(logits, dim=-1), 1, generator=gerador))
            observacao, recompensa, terminado, truncado, info = ambiente.step(acao)
            feito = terminado or truncado
            retorno += recompensa
            if escritor is not None:
                registros.append(
                    RegistroTraco(
                        episodio=episodio,
                        passo=info["passo"],
                        x=info["x"],
                        y=info["y"],
                        direcao=info["direcao"],
                        acao=acao,
                        interacao=info["interacao"],
                        sala=info["sala"],
                        r_i=0.0,
                        r_e=recompensa,
                        hash_obs=info["hash"],
                    )
                )
        if escritor is not None:
            escritor.escrever(registros)
        retornos.append(retorno)

    media, desvio = float(np.mean(retornos)), float(np.std(retornos))
    logger.info("Avaliação em %s: retorno %.3f ± %.3f em %d episódios.", tarefa.nome, media, desvio, episodios)
    return media, desvio
