from typing import Any, Dict, Optional, Tuple

import gymnasium as gym
import numpy as np
from gymnasium import spaces

from src.utils import Constantes

from .estado_ambiente import EstadoAmbiente
from .objetos import TipoObjeto
from .observacao import hash_observacao
from .tarefas import EspecificacaoTarefa
from .transicao import classificar_interacao, despejar_layout, passo, reiniciar, sala_do_agente


class AmbienteGrade(gym.Env):
    """
    Adaptador gymnasium do motor funcional. Guarda apenas o estado corrente; cada reset sem
    semente explícita usa a próxima semente da sequência iniciada pela primeira semente recebida.
    """

    metadata = {"render_modes": ["ansi"]}

    def __init__(self, tarefa: EspecificacaoTarefa, semente: int = 0):
        super().__init__()
        self.tarefa = tarefa
        lado = tarefa.tamanho_visao
        self.observation_space = spaces.Box(
            low=0, high=max(TipoObjeto), shape=(lado, lado, 3), dtype=np.uint8
        )
        self.action_space = spaces.Discrete(Constantes.NUM_ACOES)
        self.estado: Optional[EstadoAmbiente] = None
        self._proxima_semente = int(semente)

    def reset(self, *, seed: Optional[int] = None, options: Optional[dict] = None) -> Tuple[np.ndarray, Dict[str, Any]]:
        super().reset(seed=seed)
        if seed is not None:
            self._proxima_semente = int(seed)
        semente = self._proxima_semente
        self._proxima_semente += 1
        self.estado, observacao = reiniciar(self.tarefa, semente)
        return observacao, self._info(observacao, semente=semente)

    def step(self, action: int) -> Tuple[np.ndarray, float, bool, bool, Dict[str, Any]]:
        antes = self.estado
        self.estado, observacao, recompensa, feito = passo(antes, action)
        truncado = feito and recompensa == 0.0 and self.estado.passo >= self.estado.max_passos
        info = self._info(observacao, interacao=int(classificar_interacao(antes, action, self.estado)))
        return observacao, recompensa, feito and not truncado, truncado, info

    def render(self) -> str:
        return despejar_layout(self.estado)

    def _info(self, observacao: np.ndarray, **extras) -> Dict[str, Any]:
        agente = self.estado.agente
        return dict(
            x=agente.x,
            y=agente.y,
            direcao=int(agente.direcao),
            sala=sala_do_agente(self.estado),
            passo=self.estado.passo,
            hash=hash_observacao(observacao),
            **extras,
        )
