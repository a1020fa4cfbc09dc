import logging
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Dict, List, Optional

import pandas as pd
import torch

from src.agente import (
    Ator,
    ConjuntoParametros,
    ExecutorAssincrono,
    ExecutorSincrono,
    concatenar_lotes,
    passo_aprendiz,
    semente_ambiente,
)
from src.experimento import (
    ConfigExperimento,
    EstadoTreino,
    RegistroDiagnosticos,
    RegistroTreino,
    carregar_estado_treino,
    diretorio_execucao,
    existe_checkpoint,
    ler_config,
    salvar_config,
    salvar_estado_treino,
)
from src.intrinseca import EscritorTracos, mesclar_delta
from src.utils import barra_progresso
from src.utils.erros import ErroConfiguracao, ErroNumerico

logger = logging.getLogger(__name__)

MENSAGEM_TREINO_CONCLUIDO = "\nTreino concluído!"
MENSAGEM_CONFIG_DIVERGENTE = "A configuração difere da execução salva; retomada recusada:\n"
ARQUIVO_FALHA_NUMERICA = "falha_numerica.csv"


@dataclass
class ResultadoTreino:
    diretorio: Path
    frames: int
    episodios: int
    media_movel_retorno: float


def _despejar_falha_numerica(diretorio: Path, estado: EstadoTreino, erro: ErroNumerico) -> Path:
    """Grava os diagnósticos do passo que produziu valores não finitos e os registra no log."""
    linha = dict(
        frames=estado.frames,
        passo_global=estado.passo_global,
        parametro=erro.nome_parametro or "",
        **erro.diagnosticos,
    )
    caminho = diretorio / ARQUIVO_FALHA_NUMERICA
    pd.DataFrame([linha]).to_csv(caminho, index=False)
    logger.error("%s Diagnósticos em %s: %s", erro, caminho, linha)
    return caminho


def _preparar_diretorio(config: ConfigExperimento, diretorio: Path, retomar: bool) -> bool:
    """Grava a configuração e decide se o treino continua de um checkpoint."""
    caminho_config = diretorio / "config.txt"
    checkpoints = diretorio / "checkpoints"
    if retomar and existe_checkpoint(checkpoints):
        anterior = ler_config(caminho_config)
        diferencas = anterior.diferencas(config)
        if diferencas:
            raise ErroConfiguracao(MENSAGEM_CONFIG_DIVERGENTE + "\n".join(diferencas))
        return True
    for nome in ("runlog.csv", "diagnosticos.csv", "tracos.csv", ARQUIVO_FALHA_NUMERICA):
        (diretorio / nome).unlink(missing_ok=True)
    salvar_config(config, caminho_config)
    return False


def executar_treino(
    config: ConfigExperimento,
    diretorio: Optional[Path] = None,
    retomar: bool = False,
    mostrar_progresso: bool = True,
) -> ResultadoTreino:
    """
    Função principal do treino: atores geram desenrolares, o aprendiz combina as recompensas
    já calculadas em lotes de B ambientes e aplica o passo do objetivo conjunto até o orçamento
    de frames, contando todo passo de ambiente de todos os atores.

    Parametros:
    - config: Configuração do experimento.
    - diretorio: Diretório da execução; por padrão <RIDE_LOG_DIR>/<tarefa>/<metodo>/seed<k>.
    - retomar: Continua do último checkpoint completo, se existir; uma configuração diferente é recusada.
    - mostrar_progresso: Mostra a barra de progresso de frames no terminal.

    Retorna:
    - O diretório da execução, os frames e episódios totais e a média móvel final do retorno.
    """
    config.validar()
    diretorio = Path(diretorio) if diretorio is not None else diretorio_execucao(config)
    diretorio.mkdir(parents=True, exist_ok=True)
    retomando = _preparar_diretorio(config, diretorio, retomar)

    if config.sincrono:
        torch.set_num_threads(1)
    tarefa = config.especificacao_tarefa()
    config_recompensa = config.config_recompensa()
    config_otimizacao = config.config_otimizacao()
    pesos = config.pesos_perda()

    parametros = ConjuntoParametros(config_otimizacao, config.tamanho_visao, config.semente)
    tabela_global: Dict[int, int] = {}
    registro = RegistroTreino(diretorio / "runlog.csv")
    diagnosticos = RegistroDiagnosticos(diretorio / "diagnosticos.csv")
    tracos = EscritorTracos(diretorio / "tracos.csv") if config.registrar_tracos else None
    estado = EstadoTreino()
    if retomando:
        estado = carregar_estado_treino(diretorio / "checkpoints", parametros, tabela_global)
        registro.restaurar(estado.frames)
        diagnosticos.restaurar(estado.frames)
        logger.info("Retomando %s a partir de %d frames.", diretorio, estado.frames)

    atores = [
        Ator(
            indice,
            config.num_atores,
            tarefa,
            config_recompensa,
            config.ambientes_por_ator,
            config.comprimento_desenrolar,
            semente=semente_ambiente(config.semente, estado.passo_global) if retomando else config.semente,
            tabela_global=tabela_global,
            sem_extrinseca=config.sem_extrinseca,
            registrar_tracos=config.registrar_tracos,
        )
        for indice in range(config.num_atores)
    ]
    executor = (
        ExecutorSincrono(atores)
        if config.sincrono
        else ExecutorAssincrono(atores, config.tamanho_fila)
    )
    logger.info(
        "Treinando %s com %s por %d frames em %s.", tarefa.nome, config.metodo, config.total_frames, diretorio
    )

    proximo_checkpoint = (estado.frames // config.frames_entre_checkpoints + 1) * config.frames_entre_checkpoints
    try:
        executor.publicar(parametros.instantaneo())
        while estado.frames < config.total_frames:
            resultados = executor.coletar(config.num_atores)
            for resultado in resultados:
                mesclar_delta(tabela_global, resultado.delta_contagens)
                estado.frames += resultado.frames
                estado.episodios += len(resultado.episodios)
                registro.adicionar(estado.frames, resultado.episodios)
                if tracos is not None:
                    tracos.escrever(resultado.registros)

            lote = concatenar_lotes([resultado.lote for resultado in resultados])
            try:
                diagnostico = passo_aprendiz(
                    lote,
                    parametros,
                    pesos,
                    config_otimizacao,
                    config_recompensa,
                    config.gama,
                    config.rho_barra,
                    config.c_barra,
                )
            except ErroNumerico as erro:
                _despejar_falha_numerica(diretorio, estado, erro)
                raise
            diagnosticos.adicionar(estado.frames, diagnostico)
            estado.passo_global = parametros.passo_global
            executor.publicar(parametros.instantaneo())

            if estado.frames >= proximo_checkpoint:
                salvar_estado_treino(diretorio / "checkpoints", parametros, estado, tabela_global)
                proximo_checkpoint += config.frames_entre_checkpoints
            if mostrar_progresso:
                barra_progresso(config.total_frames, estado.frames)
    finally:
        executor.encerrar()

    salvar_estado_treino(diretorio / "checkpoints", parametros, estado, tabela_global)
    if mostrar_progresso:
        print(MENSAGEM_TREINO_CONCLUIDO)
    logger.info(
        "%d frames, %d episódios, média móvel do retorno %.3f.", estado.frames, estado.episodios, registro.media_movel
    )
    return ResultadoTreino(diretorio, estado.frames, estado.episodios, registro.media_movel)


def executar_varredura(config: ConfigExperimento, num_sementes: int, retomar: bool = False) -> List[ResultadoTreino]:
    """Treina as sementes 0..k-1 em sequência, cada uma no seu diretório."""
    if num_sementes < 1:
        raise ErroConfiguracao("A varredura exige ao menos uma semente.")
    resultados = []
    for semente in range(num_sementes):
        resultados.append(executar_treino(replace(config, semente=semente), retomar=retomar))
    return resultados
