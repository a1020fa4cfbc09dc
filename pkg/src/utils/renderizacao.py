from pathlib import Path
from typing import Dict, Sequence, Tuple, Union

import matplotlib

matplotlib.use("Agg")

import numpy as np
from PIL import Image as Img
from matplotlib import pyplot as plt

from .constantes import Constantes


def converter_contagens_para_imagem(mapa: np.ndarray) -> np.ndarray:
    """
    Converte um mapa de valores em tons de cinza normalizados pelo máximo.

    Parametros:
    - mapa: Matriz (altura, largura) de valores não negativos; NaN é tratado como 0.

    Retorna:
    - Matriz uint8 onde o maior valor vira 255 e o zero vira 0.
    """
    valores = np.nan_to_num(np.asarray(mapa, dtype=np.float64), nan=0.0)
    maximo = valores.max() if valores.size else 0.0
    if maximo <= 0:
        return np.zeros(valores.shape, dtype=np.uint8)
    return np.round(255 * valores / maximo).astype(np.uint8)


def salvar_mapa_calor(mapa: np.ndarray, caminho: Union[str, Path]) -> np.ndarray:
    """
    Salva um mapa de calor como imagem portátil em tons de cinza, ampliada sem interpolação e
    mantendo a proporção da grade.

    Parametros:
    - mapa: Matriz (altura, largura) de valores.
    - caminho: Arquivo de saída; a extensão .pgm gera o formato portátil.

    Retorna:
    - A imagem em tons de cinza, no tamanho da grade.
    """
    imagem = converter_contagens_para_imagem(mapa)
    altura, largura = imagem.shape

    # Calcula o tamanho ampliado preservando a proporção da grade
    escala = max(1, Constantes.ALTURA_PADRAO_IMAGEM // max(altura, largura))
    tamanho = (largura * escala, altura * escala)

    caminho = Path(caminho)
    caminho.parent.mkdir(parents=True, exist_ok=True)
    Img.fromarray(imagem).resize(tamanho, resample=Img.NEAREST).save(caminho)
    return imagem


def plotar_curvas(
    curvas: Dict[str, Tuple[Sequence[float], Sequence[float]]],
    caminho: Union[str, Path],
    titulo: str,
    rotulo_y: str,
) -> None:
    """
    Salva um gráfico de linhas com uma curva por rótulo.

    Parametros:
    - curvas: Mapeia o rótulo de cada curva para o par (frames, valores).
    - caminho: Arquivo PNG de saída.
    - titulo: Título do gráfico.
    - rotulo_y: Rótulo do eixo vertical.
    """
    fig, axs = plt.subplots()
    for rotulo, (x, y) in curvas.items():
        axs.plot(x, y, label=rotulo)
    axs.set_xlabel("frames")
    axs.set_ylabel(rotulo_y)
    axs.set_title(titulo)
    if curvas:
        axs.legend()
    caminho = Path(caminho)
    caminho.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(caminho)
    plt.close(fig)


def barra_progresso(trabalho_total: int, trabalho_atual: int) -> None:
    """
    Printa a barra de progresso do treino na tela.

    Parametros:
    - trabalho_total: O total de trabalho a ser feito, neste caso, o orçamento de frames
    - trabalho_atual: A quantidade de trabalho feito até agora, neste caso, frames já executados
    """
    progresso = min(100, int(100 * (trabalho_atual / float(max(1, trabalho_total)))))
    preenchido = progresso * Constantes.LARGURA_BARRA_PROGRESSO // 100

    barra = "█" * preenchido + "-" * (Constantes.LARGURA_BARRA_PROGRESSO - preenchido)
    print(f"\r|{barra}| {progresso}% ({trabalho_atual}/{trabalho_total})", end="", flush=True)
