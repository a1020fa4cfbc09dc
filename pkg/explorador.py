import argparse
import logging
import sys
from pathlib import Path

from src.ambiente import CORES_TESTE, CORES_TREINO, reiniciar, tarefa_de_nome
from src.analise import (
    agrupamento_de_nome,
    curva_decaimento_recompensa,
    estados_distintos_por_episodio,
    indice_sala_por_episodio,
    mapa_recompensa_intrinseca,
    mapa_visitas,
    plotar_curvas_aprendizado,
    plotar_decaimento,
    salvar_mapa,
    tabela_recompensa_por_acao,
)
from src.experimento import ConfigExperimento, config_de_dict, ler_config, ler_registro
from src.interface import avalie, despeje, formato_grade, treine, varra
from src.intrinseca import ler_tracos
from src.utils import configurar_logging
from src.utils.erros import ErroConfiguracao, ErroExplorador

logger = logging.getLogger("src.explorador")

MENSAGEM_USO = (
    "Uso: python3 explorador.py train|evaluate|sweep|analyze|layout [opções]. "
    "Use 'python3 explorador.py <comando> --help' para as opções de cada comando."
)

# Opção da linha de comando -> campo de ConfigExperimento
OPCOES_CONFIG = {
    "task": "tarefa",
    "method": "metodo",
    "total_frames": "total_frames",
    "seed": "semente",
    "singleton": "singleton",
    "num_actors": "num_atores",
    "omega_ir": "omega_ir",
    "entropy_coef": "coef_entropia",
    "unroll_length": "comprimento_desenrolar",
    "batch_size": "tamanho_lote",
}


def _opcoes_treino(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--task")
    parser.add_argument("--method")
    parser.add_argument("--total-frames", type=int)
    parser.add_argument("--seed", type=int)
    parser.add_argument("--singleton", type=int, metavar="SEED")
    parser.add_argument("--num-actors", type=int)
    parser.add_argument("--omega-ir", type=float)
    parser.add_argument("--entropy-coef", type=float)
    parser.add_argument("--unroll-length", type=int)
    parser.add_argument("--batch-size", type=int)
    parser.add_argument("--no-extrinsic", action="store_true")
    parser.add_argument("--sync", action="store_true")
    parser.add_argument("--traces", action="store_true", help="grava tracos.csv durante o treino")
    parser.add_argument("--resume", action="store_true")
    parser.add_argument("--config", type=Path, help="arquivo chave=valor com campos de ConfigExperimento")


def _criar_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="explorador.py", description="Bancada de exploração com recompensas intrínsecas.")
    parser.add_argument("--verbose", action="store_true")
    comandos = parser.add_subparsers(dest="comando", required=True)

    _opcoes_treino(comandos.add_parser("train", help="treina uma semente"))
    varredura = comandos.add_parser("sweep", help="treina as sementes 0..k-1")
    _opcoes_treino(varredura)
    varredura.add_argument("--seeds", type=int, default=5)

    avaliacao = comandos.add_parser("evaluate", help="avalia uma política")
    avaliacao.add_argument("--checkpoint", type=Path)
    avaliacao.add_argument("--random", action="store_true", help="avalia a política uniforme")
    avaliacao.add_argument("--task", required=True)
    avaliacao.add_argument("--episodes", type=int, default=100)
    avaliacao.add_argument("--colors", choices=["train", "held-out"])
    avaliacao.add_argument("--seed", type=int, default=0)
    avaliacao.add_argument("--singleton", type=int, metavar="SEED")
    avaliacao.add_argument("--max-steps", type=int)
    avaliacao.add_argument("--traces", type=Path, help="CSV de traços da avaliação")

    analise = comandos.add_parser("analyze", help="análises a partir de traços e registros")
    analise.add_argument("analise", choices=["table", "visitmap", "rewardmap", "distinct", "decay", "rooms", "curves"])
    analise.add_argument("--traces", type=Path, required=True, help="arquivo ou diretório de traços e registros")
    analise.add_argument("--out", type=Path, required=True)
    analise.add_argument("--groups", default="multiroom", help="multiroom ou objetos")
    analise.add_argument("--window", type=int, default=100)
    analise.add_argument("--task", help="tarefa do layout, para o formato dos mapas")
    analise.add_argument("--singleton", type=int, default=0, metavar="SEED")

    layout = comandos.add_parser("layout", help="mostra o mapa em texto de um episódio")
    layout.add_argument("--task", required=True)
    layout.add_argument("--seed", type=int, default=0)
    return parser


def _config_de_argumentos(argumentos: argparse.Namespace) -> ConfigExperimento:
    config = ler_config(argumentos.config) if argumentos.config else ConfigExperimento()
    valores = {
        campo: str(getattr(argumentos, opcao))
        for opcao, campo in OPCOES_CONFIG.items()
        if getattr(argumentos, opcao) is not None
    }
    if argumentos.no_extrinsic:
        valores["sem_extrinseca"] = "true"
    if argumentos.sync:
        valores["sincrono"] = "true"
    if argumentos.traces:
        valores["registrar_tracos"] = "true"
    return config_de_dict(valores, config)


def _registros_de_execucoes(raiz: Path) -> dict:
    caminhos = sorted(raiz.rglob("runlog.csv")) if raiz.is_dir() else [raiz]
    if not caminhos:
        raise ErroConfiguracao(f"Nenhum runlog.csv em '{raiz}'.")
    return {
        str(caminho.parent.relative_to(raiz)) if raiz.is_dir() else caminho.stem: ler_registro(caminho)
        for caminho in caminhos
    }


def _analisar(argumentos: argparse.Namespace) -> None:
    saida = argumentos.out
    saida.mkdir(parents=True, exist_ok=True)

    if argumentos.analise in ("decay", "curves"):
        registros = _registros_de_execucoes(argumentos.traces)
        if argumentos.analise == "decay":
            curvas = curva_decaimento_recompensa(registros, argumentos.window)
            for rotulo, curva in curvas.items():
                curva.to_csv(saida / f"decaimento_{rotulo.replace('/', '_')}.csv", index=False)
            plotar_decaimento(curvas, saida / "decaimento.png")
        else:
            plotar_curvas_aprendizado(registros, saida / "curvas_aprendizado.png")
        return

    tracos = ler_tracos(argumentos.traces)
    agrupamento = agrupamento_de_nome(argumentos.groups)
    formato = None
    if argumentos.task:
        estado, _ = reiniciar(tarefa_de_nome(argumentos.task, argumentos.singleton), argumentos.singleton)
        formato = formato_grade(estado)

    if argumentos.analise == "table":
        tabela = tabela_recompensa_por_acao(tracos, agrupamento)
        tabela.to_csv(saida / "tabela_acoes.csv", index=False)
        print(tabela.to_string(index=False))
    elif argumentos.analise == "visitmap":
        salvar_mapa(mapa_visitas(tracos, formato), saida, "visitas")
    elif argumentos.analise == "rewardmap":
        for grupo, mapa in mapa_recompensa_intrinseca(tracos, agrupamento, formato).items():
            salvar_mapa(mapa, saida, f"recompensa_{grupo}")
    elif argumentos.analise == "distinct":
        serie = estados_distintos_por_episodio(tracos, argumentos.window)
        serie.to_csv(saida / "estados_distintos.csv", index=False)
        print(f"Média de estados distintos por episódio: {serie['distintos'].mean():.2f}")
    elif argumentos.analise == "rooms":
        serie, mediana = indice_sala_por_episodio(tracos)
        serie.to_csv(saida / "salas.csv", index=False)
        print(f"Mediana do índice de sala por episódio: {mediana}")


def executar(argv=None) -> int:
    parser = _criar_parser()
    if argv is None and len(sys.argv) == 1:
        print(MENSAGEM_USO)
        return 2
    argumentos = parser.parse_args(argv)
    configurar_logging(logging.DEBUG if argumentos.verbose else logging.INFO)
    try:
        if argumentos.comando == "train":
            resultado = treine(_config_de_argumentos(argumentos), retomar=argumentos.resume)
            print(f"Execução em {resultado.diretorio}: média móvel do retorno {resultado.media_movel_retorno:.3f}")
        elif argumentos.comando == "sweep":
            for resultado in varra(_config_de_argumentos(argumentos), argumentos.seeds, retomar=argumentos.resume):
                print(f"{resultado.diretorio}: média móvel do retorno {resultado.media_movel_retorno:.3f}")
        elif argumentos.comando == "evaluate":
            if argumentos.checkpoint is None and not argumentos.random:
                parser.error("informe --checkpoint ou --random")
            tarefa = tarefa_de_nome(argumentos.task, argumentos.singleton, limite_passos=argumentos.max_steps)
            cores = {"train": CORES_TREINO, "held-out": CORES_TESTE}.get(argumentos.colors)
            checkpoint = None if argumentos.random else argumentos.checkpoint
            media, desvio = avalie(checkpoint, tarefa, argumentos.episodes, cores, argumentos.seed, argumentos.traces)
            print(f"Retorno médio: {media:.4f} ± {desvio:.4f}")
        elif argumentos.comando == "analyze":
            _analisar(argumentos)
        elif argumentos.comando == "layout":
            estado, _ = reiniciar(tarefa_de_nome(argumentos.task), argumentos.seed)
            print(despeje(estado))
    except ErroExplorador as erro:
        logger.error("%s", erro)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(executar())
