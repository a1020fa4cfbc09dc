from dataclasses import dataclass

import torch
from torch.nn import functional as F

from src.utils.erros import ErroConfiguracao

from .vtrace import log_prob_acoes

COEFICIENTE_BASELINE = 0.5


@dataclass(frozen=True)
class PesosPerda:
    """Pesos do objetivo conjunto ω_π·L_RL + ω_fw·L_fw + ω_inv·L_inv."""
    omega_pi: float = 1.0
    omega_fw: float = 10.0
    omega_inv: float = 0.1

    def __post_init__(self):
        for nome in ("omega_pi", "omega_fw", "omega_inv"):
            if getattr(self, nome) < 0:
                raise ErroConfiguracao(f"O peso '{nome}' não pode ser negativo.")


def entropia_politica(logits: torch.Tensor) -> torch.Tensor:
    """Entropia −Σ π log π de cada distribuição, no formato dos logits sem o último eixo."""
    log_pi = F.log_softmax(logits, dim=-1)
    return -(log_pi.exp() * log_pi).sum(dim=-1)


def perda_rl(
    acoes: torch.Tensor,
    vs: torch.Tensor,
    vantagens: torch.Tensor,
    logits_alvo: torch.Tensor,
    valores: torch.Tensor,
    coef_entropia: float,
) -> torch.Tensor:
    """
    Perda ator-crítico somada sobre tempo e ambientes.

    Parametros:
    - acoes: (T, B) ações tomadas.
    - vs / vantagens: (T, B) alvos V-trace; entram sem gradiente.
    - logits_alvo: (T, B, 7) logits da política sendo treinada.
    - valores: (T, B) V(s_t) da política sendo treinada.
    - coef_entropia: Peso da entropia negativa.

    Retorna:
    - Escalar −Σ log π(a|s)·vantagem + 0.5·Σ (vs − V)² + coef·Σ π log π.
    """
    gradiente_politica = -(log_prob_acoes(logits_alvo, acoes) * vantagens.detach()).sum()
    baseline = COEFICIENTE_BASELINE * ((vs.detach() - valores) ** 2).sum()
    entropia_negativa = -entropia_politica(logits_alvo).sum()
    return gradiente_politica + baseline + coef_entropia * entropia_negativa
