from collections import deque
from pathlib import Path
from typing import Dict, Iterable, List, Union

import numpy as np
import pandas as pd

from src.agente import DiagnosticosAprendiz, EpisodioConcluido
from src.utils import Constantes, EscritorCsv

COLUNAS_REGISTRO = [
    "frames",
    "episodios",
    "retorno_episodio",
    "media_movel_retorno",
    "media_recompensa_intrinseca",
    "passos_episodio",
    "sala_maxima",
]
COLUNAS_DIAGNOSTICO = [
    "frames",
    "perda_rl",
    "perda_direta",
    "perda_inversa",
    "perda_rnd",
    "entropia",
    "norma_gradiente",
    "media_r_i",
]


class RegistroTreino:
    """
    Registro somente por acréscimo dos episódios terminados, com a média móvel do retorno
    sobre os últimos 100 episódios.
    """

    def __init__(self, caminho: Union[str, Path], janela: int = Constantes.JANELA_MEDIA_MOVEL):
        self._csv = EscritorCsv(caminho, COLUNAS_REGISTRO)
        self.retornos = deque(maxlen=janela)
        self.episodios = 0
        self.frames = 0

    @property
    def caminho(self) -> Path:
        return self._csv.caminho

    @property
    def media_movel(self) -> float:
        return float(np.mean(self.retornos)) if self.retornos else 0.0

    def adicionar(self, frames: int, episodios: Iterable[EpisodioConcluido]) -> List[Dict[str, float]]:
        """Acrescenta os episódios terminados até 'frames' passos de ambiente."""
        self.frames = max(self.frames, frames)
        linhas = []
        for episodio in episodios:
            self.episodios += 1
            self.retornos.append(episodio.retorno)
            linhas.append(
                dict(
                    frames=self.frames,
                    episodios=self.episodios,
                    retorno_episodio=episodio.retorno,
                    media_movel_retorno=self.media_movel,
                    media_recompensa_intrinseca=episodio.media_r_i,
                    passos_episodio=episodio.passos,
                    sala_maxima=episodio.sala_maxima,
                )
            )
        self._csv.escrever_varias(linhas)
        return linhas

    def restaurar(self, frames: int) -> None:
        """Descarta linhas posteriores a 'frames' e recompõe a janela a partir do arquivo."""
        self._csv.truncar(lambda linha: int(linha["frames"]) <= frames)
        registro = ler_registro(self.caminho)
        self.frames = frames
        self.episodios = len(registro)
        self.retornos.clear()
        self.retornos.extend(registro["retorno_episodio"].tail(self.retornos.maxlen).tolist())


class RegistroDiagnosticos:
    """Uma linha por passo do aprendiz."""

    def __init__(self, caminho: Union[str, Path]):
        self._csv = EscritorCsv(caminho, COLUNAS_DIAGNOSTICO)

    def adicionar(self, frames: int, diagnosticos: DiagnosticosAprendiz) -> None:
        self._csv.escrever(dict(frames=frames, **diagnosticos.como_dict()))

    def restaurar(self, frames: int) -> None:
        self._csv.truncar(lambda linha: int(linha["frames"]) <= frames)


def ler_registro(caminho: Union[str, Path]) -> pd.DataFrame:
    return pd.read_csv(caminho)
