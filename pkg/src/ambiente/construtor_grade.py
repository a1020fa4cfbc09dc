from typing import List, Optional, Tuple

import numpy as np

from .objetos import Celula, Cor, PAREDE, TipoObjeto, VAZIO
from .estado_ambiente import Posicao


class ConstrutorGrade:
    """
    Grade mutável usada apenas durante a geração de um ambiente. Ao final da geração os
    arrays são entregues ao EstadoAmbiente, que nunca mais os altera.
    """

    def __init__(self, largura: int, altura: int):
        self.largura = largura
        self.altura = altura
        self.grade = np.zeros((altura, largura, 3), dtype=np.uint8)
        self.grade[:, :] = VAZIO.codificar()
        self.conteudo = np.zeros((altura, largura, 2), dtype=np.uint8)
        self.salas = np.full((altura, largura), -1, dtype=np.int16)

    def colocar(self, posicao: Posicao, celula: Celula) -> None:
        x, y = posicao
        self.grade[y, x] = celula.codificar()
        self.conteudo[y, x] = (0, 0)
        if celula.contido is not None:
            self.conteudo[y, x] = (int(celula.contido[0]), int(celula.contido[1]))

    def tipo(self, posicao: Posicao) -> int:
        x, y = posicao
        return int(self.grade[y, x, 0])

    def vazia(self, posicao: Posicao) -> bool:
        return self.tipo(posicao) == TipoObjeto.VAZIO

    def na_grade(self, posicao: Posicao) -> bool:
        x, y = posicao
        return 0 <= x < self.largura and 0 <= y < self.altura

    def parede_horizontal(self, x: int, y: int, comprimento: int, celula: Celula = PAREDE) -> None:
        for i in range(x, x + comprimento):
            self.colocar((i, y), celula)

    def parede_vertical(self, x: int, y: int, comprimento: int, celula: Celula = PAREDE) -> None:
        for j in range(y, y + comprimento):
            self.colocar((x, j), celula)

    def retangulo_paredes(self, x: int, y: int, largura: int, altura: int, celula: Celula = PAREDE) -> None:
        self.parede_horizontal(x, y, largura, celula)
        self.parede_horizontal(x, y + altura - 1, largura, celula)
        self.parede_vertical(x, y, altura, celula)
        self.parede_vertical(x + largura - 1, y, altura, celula)

    def marcar_sala(self, x: int, y: int, largura: int, altura: int, indice: int) -> None:
        """Marca o interior do retângulo (sem paredes) como pertencente à sala 'indice'."""
        self.salas[y + 1 : y + altura - 1, x + 1 : x + largura - 1] = indice

    def posicoes_vazias(
        self, x: int, y: int, largura: int, altura: int, excluir: Tuple[Posicao, ...] = ()
    ) -> List[Posicao]:
        posicoes = []
        for j in range(max(0, y), min(self.altura, y + altura)):
            for i in range(max(0, x), min(self.largura, x + largura)):
                if self.grade[j, i, 0] == TipoObjeto.VAZIO and (i, j) not in excluir:
                    posicoes.append((i, j))
        return posicoes

    def sortear_posicao_vazia(
        self,
        rng: np.random.Generator,
        x: int,
        y: int,
        largura: int,
        altura: int,
        excluir: Tuple[Posicao, ...] = (),
    ) -> Optional[Posicao]:
        posicoes = self.posicoes_vazias(x, y, largura, altura, excluir)
        if not posicoes:
            return None
        return posicoes[int(rng.integers(len(posicoes)))]


def sortear_cor(rng: np.random.Generator, excluir: Tuple[Cor, ...] = ()) -> Cor:
    cores = [cor for cor in Cor if cor not in excluir]
    return cores[int(rng.integers(len(cores)))]
