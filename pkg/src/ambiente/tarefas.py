import re
from dataclasses import dataclass, replace
from enum import Enum
from typing import Optional, Tuple

from src.utils import Constantes
from src.utils.erros import ErroConfiguracao

from .objetos import Cor


class TipoTarefa(Enum):
    MULTISALA = "multiroom"
    MULTISALA_TV = "multiroom-noisytv"
    MULTISALA_CORES = "colorgen-multiroom"
    KEYCORRIDOR = "keycorridor"
    OBSTRUCTEDMAZE = "obstructedmaze"
    OBSTACULOS_DINAMICOS = "dynamicobstacles"


FAMILIA_MULTISALA = (
    TipoTarefa.MULTISALA,
    TipoTarefa.MULTISALA_TV,
    TipoTarefa.MULTISALA_CORES,
)

CORES_TREINO = (Cor.VERMELHO, Cor.AZUL, Cor.ROXO, Cor.AMARELO)
CORES_TESTE = (Cor.VERDE, Cor.CINZA)

_PADRAO_MULTISALA = re.compile(r"^(multiroom|multiroom-noisytv|colorgen-multiroom)-n(\d+)-s(\d+)$")
_PADRAO_OBSTACULOS = re.compile(r"^dynamicobstacles-(\d+)-(\d+)$")


@dataclass(frozen=True)
class EspecificacaoTarefa:
    """
    Descrição de uma família de ambientes procedurais.

    Atributos:
    - tipo: Família da tarefa.
    - num_salas / tamanho_sala: X e Y do MultiRoomNXSY.
    - tamanho_grade / num_obstaculos: Parâmetros do DynamicObstacles.
    - conjunto_cores: Cores sorteadas para paredes e objetivo no ColorGen.
    - semente_singleton: Se definida, todo reset gera exatamente o mesmo ambiente.
    - tamanho_visao: Lado da visão egocêntrica.
    - limite_passos: Sobrescreve o limite de passos padrão da tarefa.
    """
    tipo: TipoTarefa
    num_salas: int = 0
    tamanho_sala: int = 0
    tamanho_grade: int = 0
    num_obstaculos: int = 0
    conjunto_cores: Tuple[Cor, ...] = CORES_TREINO
    semente_singleton: Optional[int] = None
    tamanho_visao: int = Constantes.TAMANHO_VISAO
    limite_passos: Optional[int] = None

    def __post_init__(self):
        self.validar()

    def validar(self) -> None:
        if self.tipo in FAMILIA_MULTISALA:
            if self.num_salas < 2 or self.tamanho_sala < 4:
                raise ErroConfiguracao(
                    f"MultiRoom exige X >= 2 e Y >= 4, recebido X={self.num_salas} Y={self.tamanho_sala}."
                )
            if self.tamanho_sala > Constantes.TAMANHO_GRADE_MULTISALA // 2:
                raise ErroConfiguracao(f"Salas de tamanho {self.tamanho_sala} não cabem na grade.")
        if self.tipo == TipoTarefa.OBSTACULOS_DINAMICOS:
            if self.tamanho_grade < 5:
                raise ErroConfiguracao("DynamicObstacles exige grade de lado >= 5.")
            livres = (self.tamanho_grade - 2) ** 2 - 2
            if not 0 <= self.num_obstaculos <= livres // 2:
                raise ErroConfiguracao(f"Número de obstáculos inválido: {self.num_obstaculos}.")
        if self.tipo == TipoTarefa.MULTISALA_CORES and len(self.conjunto_cores) == 0:
            raise ErroConfiguracao("O conjunto de cores não pode ser vazio.")
        if self.tamanho_visao < 3 or self.tamanho_visao % 2 == 0:
            raise ErroConfiguracao("O tamanho da visão deve ser ímpar e >= 3.")
        if self.limite_passos is not None and self.limite_passos <= 0:
            raise ErroConfiguracao("O limite de passos deve ser positivo.")

    @property
    def max_passos(self) -> int:
        if self.limite_passos is not None:
            return self.limite_passos
        if self.tipo in FAMILIA_MULTISALA:
            return Constantes.PASSOS_POR_SALA * self.num_salas
        if self.tipo == TipoTarefa.KEYCORRIDOR:
            return Constantes.PASSOS_KEYCORRIDOR
        if self.tipo == TipoTarefa.OBSTRUCTEDMAZE:
            return Constantes.PASSOS_OBSTRUCTEDMAZE
        return 4 * self.tamanho_grade ** 2

    @property
    def nome(self) -> str:
        if self.tipo in FAMILIA_MULTISALA:
            return f"{self.tipo.value}-n{self.num_salas}-s{self.tamanho_sala}"
        if self.tipo == TipoTarefa.KEYCORRIDOR:
            return "keycorridor-s3-r3"
        if self.tipo == TipoTarefa.OBSTRUCTEDMAZE:
            return "obstructedmaze-2dlh"
        return f"dynamicobstacles-{self.tamanho_grade}-{self.num_obstaculos}"

    def com_cores(self, cores: Tuple[Cor, ...]) -> "EspecificacaoTarefa":
        return replace(self, conjunto_cores=tuple(cores))


def tarefa_de_nome(
    nome: str,
    semente_singleton: Optional[int] = None,
    tamanho_visao: int = Constantes.TAMANHO_VISAO,
    limite_passos: Optional[int] = None,
) -> EspecificacaoTarefa:
    """
    Converte o nome de uma tarefa na linha de comando em sua especificação.

    Parametros:
    - nome: Nome como 'multiroom-n7-s4', 'keycorridor-s3-r3' ou 'dynamicobstacles-6-3'.
    - semente_singleton: Semente fixa do layout, para o modo singleton.
    - tamanho_visao: Lado da visão egocêntrica.
    - limite_passos: Limite de passos que substitui o da tarefa.

    Retorna:
    - A especificação da tarefa.
    """
    extras = dict(
        semente_singleton=semente_singleton,
        tamanho_visao=tamanho_visao,
        limite_passos=limite_passos,
    )
    nome = nome.strip().lower()
    casamento = _PADRAO_MULTISALA.match(nome)
    if casamento:
        familia, salas, tamanho = casamento.groups()
        return EspecificacaoTarefa(
            TipoTarefa(familia), num_salas=int(salas), tamanho_sala=int(tamanho), **extras
        )
    if nome == "keycorridor-s3-r3":
        return EspecificacaoTarefa(TipoTarefa.KEYCORRIDOR, **extras)
    if nome == "obstructedmaze-2dlh":
        return EspecificacaoTarefa(TipoTarefa.OBSTRUCTEDMAZE, **extras)
    casamento = _PADRAO_OBSTACULOS.match(nome)
    if casamento:
        tamanho, obstaculos = casamento.groups()
        return EspecificacaoTarefa(
            TipoTarefa.OBSTACULOS_DINAMICOS,
            tamanho_grade=int(tamanho),
            num_obstaculos=int(obstaculos),
            **extras,
        )
    raise ErroConfiguracao(f"Tarefa desconhecida: '{nome}'.")
