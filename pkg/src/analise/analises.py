import logging
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Iterable, List, Mapping, Optional, Tuple, Union

import numpy as np
import pandas as pd

from src.intrinseca import RegistroTraco
from src.utils import Constantes, plotar_curvas, salvar_mapa_calor
from src.utils.erros import ErroContrato

from .agrupamentos import Predicado, nomes_grupos, rotular_grupos, rotular_registro

logger = logging.getLogger(__name__)

COLUNAS_EPISODIO = ["fonte", "episodio"]


def _chaves_episodio(tracos: pd.DataFrame) -> list:
    return COLUNAS_EPISODIO if "fonte" in tracos.columns else ["episodio"]


def _estatisticas(valores: np.ndarray) -> Tuple[float, float]:
    """Média e desvio populacional com somas exatamente arredondadas, independentes da ordem."""
    media = math.fsum(valores) / len(valores)
    return media, math.sqrt(math.fsum((valores - media) ** 2) / len(valores))


def _montar_tabela(valores: Mapping[str, np.ndarray], agrupamento: Dict[str, Predicado]) -> pd.DataFrame:
    linhas = []
    for grupo in nomes_grupos(agrupamento):
        presentes = valores.get(grupo)
        if presentes is None or len(presentes) == 0:
            linhas.append(dict(grupo=grupo, media=math.nan, desvio=math.nan, passos=0))
        else:
            media, desvio = _estatisticas(presentes)
            linhas.append(dict(grupo=grupo, media=media, desvio=desvio, passos=len(presentes)))
    return pd.DataFrame(linhas, columns=["grupo", "media", "desvio", "passos"]).astype({"passos": "int64"})


def tabela_recompensa_por_acao(tracos: pd.DataFrame, agrupamento: Dict[str, Predicado]) -> pd.DataFrame:
    """
    Média e desvio de r_i por grupo de ações.

    Parametros:
    - tracos: Registros de traço.
    - agrupamento: Grupos de ações.

    Retorna:
    - DataFrame com colunas grupo, media, desvio e passos; grupos sem ocorrência têm media NaN.
    """
    if tracos.empty:
        raise ErroContrato("Os traços não cobrem nenhum episódio.")
    grupos = rotular_grupos(tracos, agrupamento)
    valores = {grupo: serie.to_numpy(dtype=np.float64) for grupo, serie in tracos["r_i"].groupby(grupos)}
    return _montar_tabela(valores, agrupamento)


@dataclass
class TabelaRecompensaStreaming:
    """
    Mesma tabela de 'tabela_recompensa_por_acao', alimentada registro a registro. Guarda os
    valores de cada grupo para que o resultado seja idêntico ao da tabela completa.
    """
    agrupamento: Dict[str, Predicado]
    _valores: Dict[str, List[float]] = field(default_factory=dict)

    def adicionar(self, registro: RegistroTraco) -> None:
        grupo = rotular_registro(registro.acao, registro.interacao, self.agrupamento)
        self._valores.setdefault(grupo, []).append(float(registro.r_i))

    def adicionar_varios(self, registros: Iterable[RegistroTraco]) -> "TabelaRecompensaStreaming":
        for registro in registros:
            self.adicionar(registro)
        return self

    def tabela(self) -> pd.DataFrame:
        valores = {grupo: np.asarray(lista, dtype=np.float64) for grupo, lista in self._valores.items()}
        return _montar_tabela(valores, self.agrupamento)


def _formato_mapa(tracos: pd.DataFrame, formato: Optional[Tuple[int, int]]) -> Tuple[int, int]:
    if formato is None:
        return int(tracos["y"].max()) + 1, int(tracos["x"].max()) + 1
    altura, largura = formato
    fora = (tracos["x"] < 0) | (tracos["x"] >= largura) | (tracos["y"] < 0) | (tracos["y"] >= altura)
    if fora.any():
        raise ErroContrato(f"Traços com posições fora da grade {altura}x{largura}.")
    return altura, largura


def mapa_visitas(tracos: pd.DataFrame, formato: Optional[Tuple[int, int]] = None) -> np.ndarray:
    """
    Contagem de visitas por célula.

    Parametros:
    - tracos: Registros de traço de um layout fixo.
    - formato: (altura, largura) da grade; inferido das posições quando omitido.

    Retorna:
    - Array (altura, largura) de contagens; a soma é o número de passos.
    """
    altura, largura = _formato_mapa(tracos, formato)
    mapa = np.zeros((altura, largura), dtype=np.int64)
    np.add.at(mapa, (tracos["y"].to_numpy(), tracos["x"].to_numpy()), 1)
    return mapa


def mapa_recompensa_intrinseca(
    tracos: pd.DataFrame, agrupamento: Dict[str, Predicado], formato: Optional[Tuple[int, int]] = None
) -> Dict[str, np.ndarray]:
    """
    Média de r_i por célula e por grupo de ações.

    Retorna:
    - Um mapa (altura, largura) por grupo; células sem registros do grupo são NaN.
    """
    altura, largura = _formato_mapa(tracos, formato)
    grupos = rotular_grupos(tracos, agrupamento)
    mapas = {}
    for grupo in nomes_grupos(agrupamento):
        selecao = tracos[grupos == grupo]
        soma = np.zeros((altura, largura))
        contagem = np.zeros((altura, largura))
        posicoes = (selecao["y"].to_numpy(), selecao["x"].to_numpy())
        np.add.at(soma, posicoes, selecao["r_i"].to_numpy())
        np.add.at(contagem, posicoes, 1)
        with np.errstate(invalid="ignore", divide="ignore"):
            mapas[grupo] = np.where(contagem > 0, soma / np.maximum(contagem, 1), np.nan)
    return mapas


def estados_distintos_por_episodio(tracos: pd.DataFrame, janela: int = Constantes.JANELA_MEDIA_MOVEL) -> pd.DataFrame:
    """
    Número de observações distintas em cada episódio e sua média móvel.

    Retorna:
    - DataFrame com as chaves do episódio, 'distintos' e 'media_movel'.
    """
    chaves = _chaves_episodio(tracos)
    serie = tracos.groupby(chaves, sort=True)["hash_obs"].nunique().rename("distintos").reset_index()
    serie["media_movel"] = serie["distintos"].rolling(janela, min_periods=1).mean()
    return serie


def indice_sala_por_episodio(tracos: pd.DataFrame) -> Tuple[pd.DataFrame, float]:
    """
    Maior índice de sala alcançado em cada episódio.

    Retorna:
    - DataFrame com as chaves do episódio e 'sala_maxima', e a mediana dessa coluna.
    """
    serie = tracos.groupby(_chaves_episodio(tracos), sort=True)["sala"].max().rename("sala_maxima").reset_index()
    mediana = float(serie["sala_maxima"].median()) if len(serie) else math.nan
    return serie, mediana


def curva_decaimento_recompensa(
    registros: Mapping[str, pd.DataFrame], janela: int = Constantes.JANELA_MEDIA_MOVEL
) -> Dict[str, pd.DataFrame]:
    """
    Recompensa intrínseca média por frames, suavizada por média móvel, para cada método.

    Parametros:
    - registros: Mapeia o rótulo do método para o seu RunLog.
    - janela: Janela da suavização; janela 1 devolve a série original.

    Retorna:
    - Um DataFrame (frames, media_r_i) por rótulo; um registro vazio gera uma série vazia e um aviso.
    """
    curvas = {}
    for rotulo, registro in registros.items():
        if registro.empty:
            logger.warning("Registro '%s' vazio; curva de decaimento vazia.", rotulo)
            curvas[rotulo] = pd.DataFrame({"frames": [], "media_r_i": []})
            continue
        curvas[rotulo] = pd.DataFrame(
            {
                "frames": registro["frames"].to_numpy(),
                "media_r_i": registro["media_recompensa_intrinseca"].rolling(janela, min_periods=1).mean().to_numpy(),
            }
        )
    return curvas


def salvar_mapa(mapa: np.ndarray, diretorio: Union[str, Path], nome: str) -> Tuple[Path, Path]:
    """Grava o mapa como CSV e como imagem PGM em tons de cinza."""
    diretorio = Path(diretorio)
    diretorio.mkdir(parents=True, exist_ok=True)
    caminho_csv, caminho_pgm = diretorio / f"{nome}.csv", diretorio / f"{nome}.pgm"
    pd.DataFrame(mapa).to_csv(caminho_csv, index=False, header=False)
    salvar_mapa_calor(mapa, caminho_pgm)
    return caminho_csv, caminho_pgm


def plotar_curvas_aprendizado(
    registros: Mapping[str, pd.DataFrame], caminho: Union[str, Path], coluna: str = "media_movel_retorno"
) -> None:
    curvas = {
        rotulo: (registro["frames"].to_numpy(), registro[coluna].to_numpy())
        for rotulo, registro in registros.items()
        if not registro.empty
    }
    plotar_curvas(curvas, caminho, "Curvas de aprendizado", coluna)


def plotar_decaimento(curvas: Mapping[str, pd.DataFrame], caminho: Union[str, Path]) -> None:
    plotar_curvas(
        {rotulo: (c["frames"].to_numpy(), c["media_r_i"].to_numpy()) for rotulo, c in curvas.items() if not c.empty},
        caminho,
        "Recompensa intrínseca média",
        "media_r_i",
    )
