from dataclasses import asdict, dataclass, fields
from pathlib import Path
from typing import Iterable, Union

import pandas as pd

from src.utils import EscritorCsv
from src.utils.erros import ErroContrato


@dataclass(frozen=True)
class RegistroTraco:
    """
    Um passo de ambiente registrado para análise.

    Atributos:
    - episodio / passo: Identificação do passo; o passo começa em 1 no primeiro passo do episódio.
    - x, y, direcao: Pose do agente após o passo.
    - acao: Código da ação executada.
    - interacao: Categoria de interação do passo (código de 'Interacao').
    - sala: Índice da sala do agente após o passo.
    - r_i / r_e: Recompensas intrínseca (antes do peso omega) e extrínseca.
    - hash_obs: Hash da observação seguinte.
    """
    episodio: int
    passo: int
    x: int
    y: int
    direcao: int
    acao: int
    interacao: int
    sala: int
    r_i: float
    r_e: float
    hash_obs: int


COLUNAS_TRACO = [campo.name for campo in fields(RegistroTraco)]


class EscritorTracos:
    """Grava registros de traço em CSV; um único escritor por arquivo."""

    def __init__(self, caminho: Union[str, Path]):
        self._csv = EscritorCsv(caminho, COLUNAS_TRACO)

    @property
    def caminho(self) -> Path:
        return self._csv.caminho

    def escrever(self, registros: Iterable[RegistroTraco]) -> None:
        self._csv.escrever_varias(asdict(registro) for registro in registros)


def ler_tracos(caminho: Union[str, Path]) -> pd.DataFrame:
    """
    Lê um CSV de traços.

    Parametros:
    - caminho: Arquivo de traços, ou diretório onde todos os 'tracos*.csv' são concatenados.

    Retorna:
    - DataFrame com as colunas de 'RegistroTraco' e a coluna 'fonte', o índice do arquivo de origem,
    que separa episódios de execuções diferentes.
    """
    caminho = Path(caminho)
    arquivos = sorted(caminho.rglob("tracos*.csv")) if caminho.is_dir() else [caminho]
    if not arquivos:
        raise ErroContrato(f"Nenhum arquivo de traços em '{caminho}'.")
    quadros = [
        pd.read_csv(arquivo, dtype={"hash_obs": "uint64"}).assign(fonte=indice)
        for indice, arquivo in enumerate(arquivos)
    ]
    tracos = pd.concat(quadros, ignore_index=True)
    faltando = set(COLUNAS_TRACO) - set(tracos.columns)
    if faltando:
        raise ErroContrato(f"Colunas ausentes nos traços: {sorted(faltando)}.")
    return tracos
