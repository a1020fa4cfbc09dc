import math
from dataclasses import replace
from statistics import median

import pytest

from src.ambiente import tarefa_de_nome
from src.analise import GRUPOS_MULTISALA, indice_sala_por_episodio, tabela_recompensa_por_acao
from src.experimento import ConfigExperimento, avaliar, ler_registro
from src.intrinseca import ler_tracos
from src.main import executar_treino
from src.utils import Constantes

pytestmark = pytest.mark.lento

SEMENTES = (0, 1, 2)

CONFIG_BANCADA = ConfigExperimento(
    tarefa="multiroom-n2-s4",
    comprimento_desenrolar=20,
    tamanho_lote=8,
    num_atores=2,
    taxa_aprendizado=0.0005,
    total_frames=3_000_000,
    sincrono=True,
    frames_entre_checkpoints=1_000_000,
)


def frames_ate_retorno(diretorio, limiar):
    """Primeiro total de frames em que a média móvel, com a janela cheia, alcança o limiar."""
    registro = ler_registro(diretorio / "runlog.csv")
    janela_cheia = registro[registro["episodios"] >= Constantes.JANELA_MEDIA_MOVEL]
    atingiu = janela_cheia[janela_cheia["media_movel_retorno"] >= limiar]
    return float(atingiu["frames"].iloc[0]) if len(atingiu) else math.inf


def maior_media_movel(diretorio):
    registro = ler_registro(diretorio / "runlog.csv")
    janela_cheia = registro[registro["episodios"] >= Constantes.JANELA_MEDIA_MOVEL]
    return float(janela_cheia["media_movel_retorno"].max()) if len(janela_cheia) else 0.0


def treinar_sementes(raiz, config, tracos_na_primeira=False):
    diretorios = []
    for semente in SEMENTES:
        diretorio = raiz / f"seed{semente}"
        registrar = tracos_na_primeira and semente == SEMENTES[0]
        executar_treino(replace(config, semente=semente, registrar_tracos=registrar), diretorio, mostrar_progresso=False)
        diretorios.append(diretorio)
    return diretorios


@pytest.fixture(scope="module")
def ride_multisala_pequena(tmp_path_factory):
    return treinar_sementes(tmp_path_factory.mktemp("ride-n2s4"), CONFIG_BANCADA, tracos_na_primeira=True)


@pytest.fixture(scope="module")
def icm_multisala_pequena(tmp_path_factory):
    return treinar_sementes(tmp_path_factory.mktemp("icm-n2s4"), replace(CONFIG_BANCADA, metodo="icm"))


def test_ride_resolve_multisala_pequena(ride_multisala_pequena):
    for diretorio in ride_multisala_pequena:
        assert frames_ate_retorno(diretorio, 0.6) <= CONFIG_BANCADA.total_frames


def test_vanilla_nao_aprende_multisala_pequena(tmp_path):
    diretorios = treinar_sementes(tmp_path, replace(CONFIG_BANCADA, metodo="vanilla"))
    for diretorio in diretorios:
        assert maior_media_movel(diretorio) < 0.1


def test_ride_mais_eficiente_que_icm_e_rnd(tmp_path):
    config = replace(CONFIG_BANCADA, tarefa="multiroom-n4-s5", total_frames=10_000_000)
    medianas = {
        metodo: median(
            frames_ate_retorno(diretorio, 0.5)
            for diretorio in treinar_sementes(tmp_path / metodo, replace(config, metodo=metodo))
        )
        for metodo in ("ride", "icm", "rnd")
    }
    assert medianas["ride"] < math.inf
    assert medianas["ride"] <= medianas["icm"]
    assert medianas["ride"] <= medianas["rnd"]


def test_tv_ruidosa_atrasa_icm_mas_nao_ride(tmp_path, ride_multisala_pequena, icm_multisala_pequena):
    config_tv = replace(CONFIG_BANCADA, tarefa="multiroom-noisytv-n2-s4")
    sem_tv = {
        "ride": median(frames_ate_retorno(d, 0.6) for d in ride_multisala_pequena),
        "icm": median(frames_ate_retorno(d, 0.6) for d in icm_multisala_pequena),
    }
    com_tv = {
        metodo: median(
            frames_ate_retorno(d, 0.6) for d in treinar_sementes(tmp_path / metodo, replace(config_tv, metodo=metodo))
        )
        for metodo in ("ride", "icm")
    }
    assert com_tv["ride"] < 1.5 * sem_tv["ride"]
    assert com_tv["icm"] == math.inf or com_tv["icm"] > 1.5 * sem_tv["icm"]


def test_sem_extrinseca_alcanca_mais_salas_que_o_acaso(tmp_path):
    config = replace(CONFIG_BANCADA, tarefa="multiroom-n4-s5", sem_extrinseca=True, total_frames=2_000_000)
    executar_treino(config, tmp_path / "ride", mostrar_progresso=False)
    tarefa = config.especificacao_tarefa()
    assert tarefa.max_passos == 200
    avaliar(tmp_path / "ride" / "checkpoints", tarefa, 100, caminho_tracos=tmp_path / "ride.csv")
    avaliar(None, tarefa, 100, caminho_tracos=tmp_path / "acaso.csv")
    _, mediana_ride = indice_sala_por_episodio(ler_tracos(tmp_path / "ride.csv"))
    _, mediana_acaso = indice_sala_por_episodio(ler_tracos(tmp_path / "acaso.csv"))
    assert mediana_ride > mediana_acaso


def test_abrir_porta_rende_mais_que_virar(ride_multisala_pequena):
    tracos = ler_tracos(ride_multisala_pequena[0] / "tracos.csv")
    medias = tabela_recompensa_por_acao(tracos, GRUPOS_MULTISALA).set_index("grupo")["media"]
    assert medias["abrir_porta"] >= 2 * medias["virar"]


def test_avaliacao_da_politica_treinada(ride_multisala_pequena):
    media, _ = avaliar(ride_multisala_pequena[0] / "checkpoints", tarefa_de_nome("multiroom-n2-s4"), 100)
    assert media > 0.5
