import torch
from torch import nn
from torch.nn import functional as F

from src.redes import TroncoConvolucional, inicializar_ortogonal
from src.utils import Constantes


class RedeEmbedding(nn.Module):
    """Embedding φ(s): o mesmo tronco convolucional da política, com parâmetros próprios e sem projeção."""

    def __init__(self, tamanho_visao: int = Constantes.TAMANHO_VISAO):
        super().__init__()
        self.tronco = TroncoConvolucional(tamanho_visao)
        self.dimensao = self.tronco.dimensao_saida

    def forward(self, observacoes: torch.Tensor) -> torch.Tensor:
        formato = observacoes.shape[:-3]
        phi = self.tronco(observacoes.reshape(-1, *observacoes.shape[-3:]))
        return phi.view(*formato, self.dimensao)


def _mlp(entrada: int, saida: int, ocultas: int) -> nn.Sequential:
    return nn.Sequential(
        nn.Linear(entrada, ocultas),
        nn.ELU(),
        nn.Linear(ocultas, ocultas),
        nn.ELU(),
        nn.Linear(ocultas, saida),
    )


class ModeloDireto(nn.Module):
    """Prevê φ(s_{t+1}) a partir de φ(s_t) concatenado à ação em one-hot."""

    def __init__(
        self,
        dimensao: int,
        num_acoes: int = Constantes.NUM_ACOES,
        ocultas: int = Constantes.UNIDADES_OCULTAS_DINAMICA,
    ):
        super().__init__()
        self.num_acoes = num_acoes
        self.rede = _mlp(dimensao + num_acoes, dimensao, ocultas)
        inicializar_ortogonal(self)

    def forward(self, phi: torch.Tensor, acoes: torch.Tensor) -> torch.Tensor:
        one_hot = F.one_hot(acoes.long(), self.num_acoes).to(phi.dtype)
        return self.rede(torch.cat([phi, one_hot], dim=-1))


class ModeloInverso(nn.Module):
    """Prevê os logits da ação tomada a partir de φ(s_t) e φ(s_{t+1})."""

    def __init__(
        self,
        dimensao: int,
        num_acoes: int = Constantes.NUM_ACOES,
        ocultas: int = Constantes.UNIDADES_OCULTAS_DINAMICA,
    ):
        super().__init__()
        self.rede = _mlp(2 * dimensao, num_acoes, ocultas)
        inicializar_ortogonal(self)

    def forward(self, phi: torch.Tensor, phi_proximo: torch.Tensor) -> torch.Tensor:
        return self.rede(torch.cat([phi, phi_proximo], dim=-1))


def embutir(rede: RedeEmbedding, observacoes: torch.Tensor) -> torch.Tensor:
    """
    Calcula φ para uma observação (V, V, 3) ou um lote (..., V, V, 3).

    Retorna:
    - Tensor (..., E), E = dimensão do embedding (32 para visões 7x7).
    """
    if observacoes.dim() == 3:
        return rede(observacoes.unsqueeze(0))[0]
    return rede(observacoes)


def erro_quadratico(predito: torch.Tensor, alvo: torch.Tensor) -> torch.Tensor:
    """Soma dos quadrados das diferenças no último eixo."""
    return ((predito - alvo) ** 2).sum(dim=-1)


def perda_direta(
    modelo: ModeloDireto, phi: torch.Tensor, acoes: torch.Tensor, phi_proximo: torch.Tensor
) -> torch.Tensor:
    """
    Perda do modelo direto, ‖φ̂(s_{t+1}) − φ(s_{t+1})‖², por transição. O gradiente chega ao modelo
    direto e ao embedding pelas duas entradas φ.

    Retorna:
    - Tensor com o formato de 'acoes'.
    """
    return erro_quadratico(modelo(phi, acoes), phi_proximo)


def perda_inversa(
    modelo: ModeloInverso, phi: torch.Tensor, phi_proximo: torch.Tensor, acoes: torch.Tensor
) -> torch.Tensor:
    """
    Entropia cruzada entre os logits previstos e a ação tomada, por transição.

    Retorna:
    - Tensor com o formato de 'acoes'.
    """
    logits = modelo(phi, phi_proximo)
    perdas = F.cross_entropy(logits.reshape(-1, logits.shape[-1]), acoes.reshape(-1).long(), reduction="none")
    return perdas.view(acoes.shape)
