from dataclasses import dataclass, field, replace
from typing import Optional, Tuple

import numpy as np

from .objetos import Direcao
from .tarefas import EspecificacaoTarefa

# Objeto carregado: (tipo, cor, tipo contido, cor contida); 0 no conteúdo indica caixa vazia
ObjetoCarregado = Tuple[int, int, int, int]
Posicao = Tuple[int, int]


@dataclass(frozen=True)
class PoseAgente:
    x: int
    y: int
    direcao: Direcao
    carregando: Optional[ObjetoCarregado] = None

    @property
    def posicao(self) -> Posicao:
        return self.x, self.y


@dataclass(frozen=True)
class EstadoAmbiente:
    """
    Estado completo de um episódio. É tratado como valor: as operações do ambiente nunca
    alteram um estado recebido, copiam os arrays que precisam mudar.

    Atributos:
    - grade: Array (altura, largura, 3) com tipo, cor e estado de cada célula.
    - conteudo: Array (altura, largura, 2) com tipo e cor do objeto dentro de cada caixa.
    - salas: Array (altura, largura) com o índice da sala de cada célula, -1 fora de salas.
    - agente: Pose do agente.
    - passo: Número de ações já executadas.
    - max_passos: Limite de passos do episódio.
    - semente_episodio: Semente da qual deriva toda a estocasticidade dentro do episódio.
    - entidades_dinamicas: Posições dos obstáculos móveis.
    - tv: Posição da bola que muda de cor no NoisyTV.
    - alvo: Posição da bola que termina o episódio ao ser pega.
    - terminado: Se o episódio já terminou.
    """
    tarefa: EspecificacaoTarefa
    grade: np.ndarray
    conteudo: np.ndarray
    salas: np.ndarray
    agente: PoseAgente
    passo: int
    max_passos: int
    semente_episodio: int
    entidades_dinamicas: Tuple[Posicao, ...] = ()
    tv: Optional[Posicao] = None
    alvo: Optional[Posicao] = None
    terminado: bool = False
    num_salas: int = field(default=1)

    @property
    def altura(self) -> int:
        return self.grade.shape[0]

    @property
    def largura(self) -> int:
        return self.grade.shape[1]

    def rng_passo(self) -> np.random.Generator:
        """Gerador determinístico do passo atual, função pura de (semente_episodio, passo)."""
        return np.random.default_rng([self.semente_episodio, self.passo])

    def com(self, **mudancas) -> "EstadoAmbiente":
        return replace(self, **mudancas)

    def igual(self, outro: "EstadoAmbiente") -> bool:
        return (
            np.array_equal(self.grade, outro.grade)
            and np.array_equal(self.conteudo, outro.conteudo)
            and np.array_equal(self.salas, outro.salas)
            and self.agente == outro.agente
            and self.passo == outro.passo
            and self.max_passos == outro.max_passos
            and self.semente_episodio == outro.semente_episodio
            and self.entidades_dinamicas == outro.entidades_dinamicas
            and self.tv == outro.tv
            and self.alvo == outro.alvo
            and self.terminado == outro.terminado
        )
