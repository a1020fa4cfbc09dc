from typing import Optional

import pandas as pd
import pytest

from src.agente import Ator, ConjuntoParametros
from src.ambiente import Direcao, EstadoAmbiente, PoseAgente, tarefa_de_nome
from src.ambiente.construtor_grade import ConstrutorGrade
from src.intrinseca import COLUNAS_TRACO, ConfigRecompensa, Metodo
from src.redes import ConfigOtimizacao


@pytest.fixture(autouse=True)
def resultados_temporarios(tmp_path, monkeypatch):
    monkeypatch.setenv("RIDE_LOG_DIR", str(tmp_path / "resultados"))


@pytest.fixture
def sala_vazia():
    """Fábrica de grades quadradas abertas, cercadas por paredes."""

    def criar(lado: int = 7) -> ConstrutorGrade:
        construtor = ConstrutorGrade(lado, lado)
        construtor.retangulo_paredes(0, 0, lado, lado)
        construtor.marcar_sala(0, 0, lado, lado, 0)
        return construtor

    return criar


@pytest.fixture
def criar_estado():
    """Fábrica de estados montados à mão sobre um ConstrutorGrade."""

    def criar(
        construtor: ConstrutorGrade,
        x: int,
        y: int,
        direcao: Direcao,
        tarefa=None,
        carregando=None,
        **extras,
    ) -> EstadoAmbiente:
        tarefa = tarefa or tarefa_de_nome("multiroom-n2-s4")
        # Somente leitura, como em 'reiniciar': 'passo' copia antes de alterar
        grade, conteudo, salas = (a.copy() for a in (construtor.grade, construtor.conteudo, construtor.salas))
        for array in (grade, conteudo, salas):
            array.setflags(write=False)
        return EstadoAmbiente(
            tarefa=tarefa,
            grade=grade,
            conteudo=conteudo,
            salas=salas,
            agente=PoseAgente(x, y, direcao, carregando),
            passo=0,
            max_passos=tarefa.max_passos,
            semente_episodio=0,
            **extras,
        )

    return criar


@pytest.fixture
def config_otimizacao():
    return ConfigOtimizacao(passos_recozimento=100)


@pytest.fixture
def parametros(config_otimizacao):
    return ConjuntoParametros(config_otimizacao, semente=0)


@pytest.fixture
def desenrolar():
    """Fábrica de desenrolares reais de um ator sobre o MultiRoomN2S4."""

    def criar(
        metodo: Metodo = Metodo.RIDE,
        parametros: Optional[ConjuntoParametros] = None,
        comprimento: int = 5,
        num_ambientes: int = 2,
        **opcoes,
    ):
        ator = Ator(
            0,
            1,
            tarefa_de_nome("multiroom-n2-s4"),
            ConfigRecompensa(metodo),
            num_ambientes,
            comprimento,
            **opcoes,
        )
        if parametros is not None:
            ator.atualizar_parametros(parametros.instantaneo())
        return ator.desenrolar()

    return criar


@pytest.fixture
def criar_tracos():
    """Fábrica de DataFrames de traço; campos omitidos recebem valores neutros."""

    def criar(linhas) -> pd.DataFrame:
        padrao = dict(episodio=0, passo=1, x=1, y=1, direcao=0, acao=2, interacao=0, sala=0, r_i=0.0, r_e=0.0, hash_obs=0)
        quadro = pd.DataFrame([{**padrao, **linha} for linha in linhas], columns=COLUNAS_TRACO)
        return quadro.astype({"hash_obs": "uint64"})

    return criar
