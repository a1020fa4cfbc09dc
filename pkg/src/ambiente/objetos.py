from dataclasses import dataclass
from enum import IntEnum
from typing import Optional, Tuple


class TipoObjeto(IntEnum):
    """Códigos do canal 0 da observação."""
    NAO_VISTO = 0
    VAZIO = 1
    PAREDE = 2
    CHAO = 3
    PORTA = 4
    CHAVE = 5
    BOLA = 6
    CAIXA = 7
    OBJETIVO = 8


class Cor(IntEnum):
    """Códigos do canal 1 da observação."""
    VERMELHO = 0
    VERDE = 1
    AZUL = 2
    ROXO = 3
    AMARELO = 4
    CINZA = 5


class EstadoPorta(IntEnum):
    """Códigos do canal 2 da observação, válidos apenas para portas."""
    ABERTA = 0
    FECHADA = 1
    TRANCADA = 2


class Direcao(IntEnum):
    LESTE = 0
    SUL = 1
    OESTE = 2
    NORTE = 3


class Acao(IntEnum):
    VIRAR_ESQUERDA = 0
    VIRAR_DIREITA = 1
    FRENTE = 2
    PEGAR = 3
    SOLTAR = 4
    ALTERNAR = 5
    FEITO = 6


class Interacao(IntEnum):
    """Categoria de um passo, derivada da ação e do conteúdo da célula à frente."""
    OUTRA = 0
    ABRIR_PORTA = 1
    PEGAR_BOLA = 2
    PEGAR_CHAVE = 3
    SOLTAR_CHAVE = 4
    ABRIR_CAIXA = 5


# Deslocamento (dx, dy) de cada direção, com y crescendo para o sul
VETOR_DIRECAO = {
    Direcao.LESTE: (1, 0),
    Direcao.SUL: (0, 1),
    Direcao.OESTE: (-1, 0),
    Direcao.NORTE: (0, -1),
}

TIPOS_PEGAVEIS = (TipoObjeto.CHAVE, TipoObjeto.BOLA, TipoObjeto.CAIXA)

CARACTERE_TIPO = {
    TipoObjeto.VAZIO: ".",
    TipoObjeto.PAREDE: "#",
    TipoObjeto.CHAO: "_",
    TipoObjeto.PORTA: "D",
    TipoObjeto.CHAVE: "K",
    TipoObjeto.BOLA: "B",
    TipoObjeto.CAIXA: "X",
    TipoObjeto.OBJETIVO: "G",
}

CARACTERE_AGENTE = {
    Direcao.LESTE: ">",
    Direcao.SUL: "v",
    Direcao.OESTE: "<",
    Direcao.NORTE: "^",
}


@dataclass(frozen=True)
class Celula:
    """
    Conteúdo de uma célula da grade.

    Atributos:
    - tipo: Tipo do objeto na célula.
    - cor: Cor do objeto.
    - estado_porta: Estado da porta, apenas para portas.
    - contido: Objeto (tipo, cor) dentro de uma caixa, apenas para caixas.
    """
    tipo: TipoObjeto
    cor: Cor = Cor.VERMELHO
    estado_porta: Optional[EstadoPorta] = None
    contido: Optional[Tuple[TipoObjeto, Cor]] = None

    def __post_init__(self):
        if self.estado_porta is not None and self.tipo != TipoObjeto.PORTA:
            raise ValueError("Apenas portas possuem estado de porta.")
        if self.tipo == TipoObjeto.PORTA and self.estado_porta is None:
            raise ValueError("Portas precisam de um estado.")
        if self.contido is not None and self.tipo != TipoObjeto.CAIXA:
            raise ValueError("Apenas caixas podem conter objetos.")

    def codificar(self) -> Tuple[int, int, int]:
        estado = 0 if self.estado_porta is None else int(self.estado_porta)
        return int(self.tipo), int(self.cor), estado


PAREDE = Celula(TipoObjeto.PAREDE, Cor.CINZA)
VAZIO = Celula(TipoObjeto.VAZIO, Cor.VERMELHO)
