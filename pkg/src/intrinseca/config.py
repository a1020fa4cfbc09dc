from dataclasses import dataclass
from enum import Enum

from src.ambiente import EspecificacaoTarefa, FAMILIA_MULTISALA, TipoTarefa
from src.utils.erros import ErroConfiguracao


class Metodo(Enum):
    RIDE = "ride"
    ICM = "icm"
    RND = "rnd"
    CONTAGEM = "count"
    APENAS_EPISODICA = "only_episodic"
    SEM_EPISODICA = "no_episodic"
    SEM_ENTROPIA_SEM_EPISODICA = "no_entropy_no_episodic"
    VANILLA = "vanilla"

    @property
    def usa_dinamica(self) -> bool:
        """Se o método treina embedding, modelo direto e modelo inverso."""
        return self in (Metodo.RIDE, Metodo.ICM, Metodo.SEM_EPISODICA, Metodo.SEM_ENTROPIA_SEM_EPISODICA)

    @property
    def usa_rnd(self) -> bool:
        return self == Metodo.RND

    @property
    def usa_contagem_global(self) -> bool:
        return self == Metodo.CONTAGEM


@dataclass(frozen=True)
class ConfigRecompensa:
    """
    Atributos:
    - metodo: Bônus de exploração usado.
    - omega_ir: Peso da recompensa intrínseca, r = r_e + omega_ir * r_i.
    - coef_entropia: Peso da regularização de entropia da política.
    """
    metodo: Metodo = Metodo.RIDE
    omega_ir: float = 0.1
    coef_entropia: float = 0.0005

    def __post_init__(self):
        if self.omega_ir < 0:
            raise ErroConfiguracao("omega_ir não pode ser negativo.")
        if self.coef_entropia < 0:
            raise ErroConfiguracao("O coeficiente de entropia não pode ser negativo.")

    @property
    def coef_entropia_efetivo(self) -> float:
        if self.metodo == Metodo.SEM_ENTROPIA_SEM_EPISODICA:
            return 0.0
        return self.coef_entropia


def _tarefa_dificil(tarefa: EspecificacaoTarefa) -> bool:
    if tarefa.tipo == TipoTarefa.OBSTRUCTEDMAZE:
        return True
    return tarefa.tipo in FAMILIA_MULTISALA and tarefa.tamanho_sala >= 8


def config_recompensa_padrao(metodo: Metodo, tarefa: EspecificacaoTarefa) -> ConfigRecompensa:
    """
    Coeficientes ajustados por método e tarefa: ICM e RND 0.1, Count 0.005, todos com entropia
    0.0001; RIDE e ablações 0.1 / 0.0005 nas tarefas de salas pequenas e 0.5 / 0.001 nas de
    salas grandes e no ObstructedMaze.

    Parametros:
    - metodo: Método de exploração.
    - tarefa: Especificação da tarefa.

    Retorna:
    - A configuração de recompensa.
    """
    if metodo in (Metodo.ICM, Metodo.RND):
        return ConfigRecompensa(metodo, 0.1, 0.0001)
    if metodo == Metodo.CONTAGEM:
        return ConfigRecompensa(metodo, 0.005, 0.0001)
    if metodo == Metodo.VANILLA:
        return ConfigRecompensa(metodo, 0.0, 0.0001)
    if _tarefa_dificil(tarefa):
        return ConfigRecompensa(metodo, 0.5, 0.001)
    return ConfigRecompensa(metodo, 0.1, 0.0005)
