import math
from typing import Union

import torch

from src.dinamica import ModeloDireto, erro_quadratico
from src.utils.erros import ErroContrato

from .config import ConfigRecompensa, Metodo
from .contagens import ArmazemContagens
from .rnd import ParRnd, erro_rnd

Numero = Union[float, torch.Tensor]


def _raiz_contagem(n_ep: Numero) -> Numero:
    if isinstance(n_ep, torch.Tensor):
        return n_ep.to(torch.get_default_dtype()).sqrt()
    return math.sqrt(n_ep)


@torch.no_grad()
def recompensa_ride(phi: torch.Tensor, phi_proximo: torch.Tensor, n_ep: Numero) -> torch.Tensor:
    """
    Recompensa RIDE: ‖φ(s_{t+1}) − φ(s_t)‖₂ / √N_ep(s_{t+1}).

    Parametros:
    - phi / phi_proximo: Embeddings (..., E) dos estados atual e seguinte.
    - n_ep: Contagem episódica do estado seguinte, escalar ou tensor com o formato do lote.

    Retorna:
    - Tensor com o formato do lote, sem gradiente.
    """
    return torch.linalg.vector_norm(phi_proximo - phi, dim=-1) / _raiz_contagem(n_ep)


@torch.no_grad()
def recompensa_icm(
    modelo_direto: ModeloDireto, phi: torch.Tensor, acoes: torch.Tensor, phi_proximo: torch.Tensor
) -> torch.Tensor:
    """Erro quadrático do modelo direto no espaço de embedding."""
    return erro_quadratico(modelo_direto(phi, acoes), phi_proximo)


@torch.no_grad()
def recompensa_rnd(par: ParRnd, observacoes: torch.Tensor) -> torch.Tensor:
    return erro_rnd(par, observacoes)


def recompensa_contagem(armazem: ArmazemContagens, chave: int) -> float:
    """1/√N(s) com a contagem global, que já deve incluir a visita atual."""
    return 1.0 / math.sqrt(armazem.global_.contagem(chave))


@torch.no_grad()
def recompensa_ablacao(
    metodo: Metodo, phi: torch.Tensor, phi_proximo: torch.Tensor, n_ep: Numero
) -> torch.Tensor:
    """
    Recompensas das ablações do RIDE.

    Parametros:
    - metodo: APENAS_EPISODICA usa 1/√N_ep; SEM_EPISODICA e SEM_ENTROPIA_SEM_EPISODICA usam
    ‖φ(s_{t+1}) − φ(s_t)‖₂ sem o desconto episódico.
    - phi / phi_proximo: Embeddings (..., E).
    - n_ep: Contagem episódica do estado seguinte.

    Retorna:
    - Tensor com o formato do lote.
    """
    if metodo == Metodo.APENAS_EPISODICA:
        n = torch.as_tensor(n_ep, dtype=torch.get_default_dtype())
        return torch.ones(phi.shape[:-1]) / n.sqrt()
    if metodo in (Metodo.SEM_EPISODICA, Metodo.SEM_ENTROPIA_SEM_EPISODICA):
        return torch.linalg.vector_norm(phi_proximo - phi, dim=-1)
    raise ErroContrato(f"O método '{metodo.value}' não é uma ablação.")


def combinar_recompensas(r_e: Numero, r_i: Numero, config: ConfigRecompensa) -> Numero:
    """r = r_e + omega_ir * r_i; o método vanilla ignora a recompensa intrínseca."""
    if config.metodo == Metodo.VANILLA:
        return r_e
    return r_e + config.omega_ir * r_i
