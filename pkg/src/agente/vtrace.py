from typing import Tuple

import torch
from torch.nn import functional as F

from src.utils.erros import ErroContrato

from .lote import LoteRollout


def log_prob_acoes(logits: torch.Tensor, acoes: torch.Tensor) -> torch.Tensor:
    """log π(a_t | s_t) das ações tomadas, com o formato de 'acoes'."""
    return F.log_softmax(logits, dim=-1).gather(-1, acoes.long().unsqueeze(-1)).squeeze(-1)


@torch.no_grad()
def calcular_vtrace(
    log_rhos: torch.Tensor,
    recompensas: torch.Tensor,
    feitos: torch.Tensor,
    valores: torch.Tensor,
    gama: float = 0.99,
    rho_barra: float = 1.0,
    c_barra: float = 1.0,
) -> Tuple[torch.Tensor, torch.Tensor]:
    """
    Alvos V-trace a partir das razões de importância em log.

    Parametros:
    - log_rhos: (T, B) log π(a|s) − log μ(a|s).
    - recompensas: (T, B).
    - feitos: (T, B); onde verdadeiro não há bootstrap além do passo.
    - valores: (T+1, B) V(s_0) ... V(s_T).
    - gama: Fator de desconto.
    - rho_barra / c_barra: Cortes das razões de importância.

    Retorna:
    - vs (T, B) e vantagens do gradiente de política (T, B), ambos sem gradiente.
    """
    valores = valores.detach()
    razoes = torch.exp(log_rhos.detach())
    rhos = torch.clamp(razoes, max=rho_barra)
    cs = torch.clamp(razoes, max=c_barra)
    descontos = gama * (~feitos.bool()).to(valores.dtype)

    atuais, seguintes = valores[:-1], valores[1:]
    deltas = rhos * (recompensas + descontos * seguintes - atuais)

    vs = torch.empty_like(atuais)
    vs_seguinte = valores[-1]
    for t in reversed(range(recompensas.shape[0])):
        vs_seguinte = atuais[t] + deltas[t] + descontos[t] * cs[t] * (vs_seguinte - seguintes[t])
        vs[t] = vs_seguinte

    vs_bootstrap = torch.cat([vs[1:], valores[-1:]], dim=0)
    vantagens = rhos * (recompensas + descontos * vs_bootstrap - atuais)
    return vs, vantagens


def alvos_vtrace(
    lote: LoteRollout,
    valores: torch.Tensor,
    logits_alvo: torch.Tensor,
    gama: float = 0.99,
    rho_barra: float = 1.0,
    c_barra: float = 1.0,
) -> Tuple[torch.Tensor, torch.Tensor]:
    """
    Calcula os alvos de valor e as vantagens de um lote com correção V-trace.

    Parametros:
    - lote: Lote desenrolado pela política de comportamento.
    - valores: (T+1, B) valores da política alvo.
    - logits_alvo: (T, B, 7) logits da política alvo.
    - gama / rho_barra / c_barra: Desconto e cortes.

    Retorna:
    - (vs, vantagens), cada um (T, B).
    """
    log_mu = log_prob_acoes(lote.logits_comportamento, lote.acoes)
    if torch.isneginf(log_mu).any() or (torch.exp(log_mu) == 0).any():
        raise ErroContrato("A política de comportamento atribuiu probabilidade 0 a uma ação tomada.")
    log_pi = log_prob_acoes(logits_alvo.detach(), lote.acoes)
    return calcular_vtrace(log_pi - log_mu, lote.recompensas, lote.feitos, valores, gama, rho_barra, c_barra)
