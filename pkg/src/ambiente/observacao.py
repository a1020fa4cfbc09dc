import hashlib

import numpy as np

from .estado_ambiente import EstadoAmbiente
from .objetos import Celula, Direcao, EstadoPorta, PAREDE, TipoObjeto, VAZIO, VETOR_DIRECAO

_CODIGO_PAREDE = np.array(PAREDE.codificar(), dtype=np.uint8)


def _coordenadas_visao(estado: EstadoAmbiente):
    """Coordenadas do mundo de cada célula da visão; linha 0 é a mais distante, o agente fica na última linha, no centro."""
    lado = estado.tarefa.tamanho_visao
    agente = estado.agente
    frente = VETOR_DIRECAO[agente.direcao]
    direita = VETOR_DIRECAO[Direcao((agente.direcao + 1) % 4)]
    linhas, colunas = np.meshgrid(np.arange(lado), np.arange(lado), indexing="ij")
    distancia_frente = lado - 1 - linhas
    lateral = colunas - lado // 2
    xs = agente.x + distancia_frente * frente[0] + lateral * direita[0]
    ys = agente.y + distancia_frente * frente[1] + lateral * direita[1]
    return xs, ys


def _mascara_visibilidade(visao: np.ndarray) -> np.ndarray:
    """
    Propaga a visibilidade a partir do agente, linha por linha em direção ao fundo da visão.
    Paredes e portas não abertas são vistas mas não deixam ver o que está atrás delas.
    """
    lado = visao.shape[0]
    deixa_ver = ~(
        (visao[:, :, 0] == TipoObjeto.PAREDE)
        | ((visao[:, :, 0] == TipoObjeto.PORTA) & (visao[:, :, 2] != EstadoPorta.ABERTA))
    )
    mascara = np.zeros((lado, lado), dtype=bool)
    mascara[lado - 1, lado // 2] = True

    for linha in reversed(range(lado)):
        for coluna in range(lado - 1):
            if not mascara[linha, coluna] or not deixa_ver[linha, coluna]:
                continue
            mascara[linha, coluna + 1] = True
            if linha > 0:
                mascara[linha - 1, coluna + 1] = True
                mascara[linha - 1, coluna] = True
        for coluna in reversed(range(1, lado)):
            if not mascara[linha, coluna] or not deixa_ver[linha, coluna]:
                continue
            mascara[linha, coluna - 1] = True
            if linha > 0:
                mascara[linha - 1, coluna - 1] = True
                mascara[linha - 1, coluna] = True
    return mascara


def codificar_observacao(estado: EstadoAmbiente) -> np.ndarray:
    """
    Gera a visão egocêntrica do agente: um array (V, V, 3) de inteiros com tipo, cor e estado de
    cada célula, com o agente olhando para a linha 0. A célula do agente mostra o objeto
    carregado, ou vazio. Células ocultas por paredes ou portas fechadas são codificadas como (0, 0, 0).

    Parametros:
    - estado: Estado do ambiente.

    Retorna:
    - A observação, como array uint8 (V, V, 3).
    """
    lado = estado.tarefa.tamanho_visao
    xs, ys = _coordenadas_visao(estado)
    dentro = (xs >= 0) & (xs < estado.largura) & (ys >= 0) & (ys < estado.altura)

    visao = np.empty((lado, lado, 3), dtype=np.uint8)
    visao[:] = _CODIGO_PAREDE
    visao[dentro] = estado.grade[ys[dentro], xs[dentro]]

    carregando = estado.agente.carregando
    if carregando is None:
        visao[lado - 1, lado // 2] = VAZIO.codificar()
    else:
        visao[lado - 1, lado // 2] = Celula(TipoObjeto(carregando[0]), carregando[1]).codificar()

    visao[~_mascara_visibilidade(visao)] = 0
    return visao


def hash_observacao(observacao: np.ndarray) -> int:
    """
    Chave de 64 bits de uma observação, estável entre execuções (não depende do hash aleatório do Python).

    Parametros:
    - observacao: Array uint8 (V, V, 3).

    Retorna:
    - Um inteiro sem sinal de 64 bits.
    """
    dados = np.ascontiguousarray(observacao, dtype=np.uint8).tobytes()
    return int.from_bytes(hashlib.blake2b(dados, digest_size=8).digest(), "little")


def serializar_observacao(observacao: np.ndarray) -> bytes:
    """Bytes da observação em ordem linha-maior, canal por último."""
    return np.ascontiguousarray(observacao, dtype=np.uint8).tobytes()
