from dataclasses import dataclass

import torch
from torch import nn

from src.redes import TroncoConvolucional, inicializar_ortogonal
from src.utils import Constantes


class RedeRnd(nn.Module):
    """Tronco convolucional seguido de uma camada densa de 128 saídas."""

    def __init__(
        self, tamanho_visao: int = Constantes.TAMANHO_VISAO, dimensao_saida: int = Constantes.DIMENSAO_SAIDA_RND
    ):
        super().__init__()
        self.tronco = TroncoConvolucional(tamanho_visao)
        self.saida = nn.Linear(self.tronco.dimensao_saida, dimensao_saida)
        inicializar_ortogonal(self.saida)

    def forward(self, observacoes: torch.Tensor) -> torch.Tensor:
        formato = observacoes.shape[:-3]
        y = self.saida(self.tronco(observacoes.reshape(-1, *observacoes.shape[-3:])))
        return y.view(*formato, -1)


@dataclass
class ParRnd:
    """Rede alvo fixa, nunca treinada, e rede preditora treinada para imitá-la."""
    alvo: RedeRnd
    preditor: RedeRnd


def criar_par_rnd(tamanho_visao: int = Constantes.TAMANHO_VISAO) -> ParRnd:
    alvo = RedeRnd(tamanho_visao)
    for parametro in alvo.parameters():
        parametro.requires_grad_(False)
    return ParRnd(alvo=alvo, preditor=RedeRnd(tamanho_visao))


def erro_rnd(par: ParRnd, observacoes: torch.Tensor) -> torch.Tensor:
    """‖preditor(s) − alvo(s)‖² por observação, com gradiente apenas para o preditor."""
    with torch.no_grad():
        alvo = par.alvo(observacoes)
    return ((par.preditor(observacoes) - alvo) ** 2).sum(dim=-1)


def perda_rnd(par: ParRnd, observacoes: torch.Tensor) -> torch.Tensor:
    """Perda do preditor: média simples do erro sobre o lote."""
    return erro_rnd(par, observacoes).mean()
