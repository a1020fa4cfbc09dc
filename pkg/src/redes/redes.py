from typing import Optional, Tuple

import torch
from torch import nn

from src.utils import Constantes
from src.utils.erros import ErroContrato

EstadoRecorrente = Tuple[torch.Tensor, torch.Tensor]


def lado_saida_convolucoes(lado: int, num_camadas: int = 3) -> int:
    """Lado da saída de 'num_camadas' convoluções 3x3 com passo 2 e preenchimento 1."""
    for _ in range(num_camadas):
        lado = (lado + 2 * 1 - 3) // 2 + 1
    return lado


def inicializar_ortogonal(modulo: nn.Module) -> None:
    """Pesos ortogonais e vieses nulos para camadas densas e LSTM; convoluções mantêm o padrão do torch."""
    for submodulo in modulo.modules():
        if isinstance(submodulo, nn.Linear):
            nn.init.orthogonal_(submodulo.weight)
            nn.init.zeros_(submodulo.bias)
        elif isinstance(submodulo, nn.LSTMCell):
            nn.init.orthogonal_(submodulo.weight_ih)
            nn.init.orthogonal_(submodulo.weight_hh)
            nn.init.zeros_(submodulo.bias_ih)
            nn.init.zeros_(submodulo.bias_hh)


class TroncoConvolucional(nn.Module):
    """
    Três convoluções de 32 filtros 3x3, passo 2 e preenchimento 1, cada uma seguida de ELU.
    Recebe observações (N, V, V, 3) de inteiros e devolve vetores achatados (N, dimensao_saida).
    """

    def __init__(self, tamanho_visao: int = Constantes.TAMANHO_VISAO, filtros: int = Constantes.FILTROS_CONV):
        super().__init__()
        self.tamanho_visao = tamanho_visao
        camadas = []
        canais = 3
        for _ in range(3):
            camadas += [nn.Conv2d(canais, filtros, kernel_size=3, stride=2, padding=1), nn.ELU()]
            canais = filtros
        self.camadas = nn.Sequential(*camadas)
        self.dimensao_saida = filtros * lado_saida_convolucoes(tamanho_visao) ** 2

    def forward(self, observacoes: torch.Tensor) -> torch.Tensor:
        if observacoes.dim() != 4 or tuple(observacoes.shape[1:]) != (self.tamanho_visao, self.tamanho_visao, 3):
            raise ErroContrato(
                f"Observações devem ter formato (N, {self.tamanho_visao}, {self.tamanho_visao}, 3), "
                f"recebido {tuple(observacoes.shape)}."
            )
        # Os códigos inteiros entram sem normalização
        x = observacoes.to(self.camadas[0].weight.dtype).permute(0, 3, 1, 2)
        return self.camadas(x).flatten(1)


class RedePolitica(nn.Module):
    """
    Rede de política e valor: tronco convolucional, LSTM de 256 unidades e duas cabeças
    densas, uma para os logits das 7 ações e outra para o valor.
    """

    def __init__(
        self,
        tamanho_visao: int = Constantes.TAMANHO_VISAO,
        unidades_lstm: int = Constantes.UNIDADES_LSTM,
        num_acoes: int = Constantes.NUM_ACOES,
    ):
        super().__init__()
        self.tronco = TroncoConvolucional(tamanho_visao)
        self.lstm = nn.LSTMCell(self.tronco.dimensao_saida, unidades_lstm)
        self.cabeca_politica = nn.Linear(unidades_lstm, num_acoes)
        self.cabeca_valor = nn.Linear(unidades_lstm, 1)
        self.unidades_lstm = unidades_lstm
        inicializar_ortogonal(self)

    def estado_inicial(self, tamanho_lote: int) -> EstadoRecorrente:
        zeros = torch.zeros(tamanho_lote, self.unidades_lstm, dtype=self.cabeca_valor.weight.dtype)
        return zeros, zeros.clone()

    def forward(
        self,
        observacoes: torch.Tensor,
        estado: EstadoRecorrente,
        inicios_episodio: Optional[torch.Tensor] = None,
    ) -> Tuple[torch.Tensor, torch.Tensor, EstadoRecorrente]:
        """
        Parametros:
        - observacoes: (B, V, V, 3) para um passo ou (T, B, V, V, 3) para um desenrolar.
        - estado: Par (h, c), cada um (B, 256).
        - inicios_episodio: (T, B) booleano; onde verdadeiro o estado recorrente é zerado antes do passo.

        Retorna:
        - Logits (B, 7) ou (T, B, 7), valores (B,) ou (T, B) e o novo estado recorrente.
        """
        passo_unico = observacoes.dim() == 4
        if passo_unico:
            observacoes = observacoes.unsqueeze(0)
        if observacoes.dim() != 5:
            raise ErroContrato(f"Formato de observações inválido: {tuple(observacoes.shape)}.")
        tempo, lote = observacoes.shape[:2]
        h, c = estado
        if h.shape != (lote, self.unidades_lstm) or c.shape != (lote, self.unidades_lstm):
            raise ErroContrato(
                f"Estado recorrente deve ter formato ({lote}, {self.unidades_lstm}), recebido {tuple(h.shape)}."
            )

        caracteristicas = self.tronco(observacoes.reshape(tempo * lote, *observacoes.shape[2:]))
        caracteristicas = caracteristicas.view(tempo, lote, -1)
        saidas = []
        for t in range(tempo):
            if inicios_episodio is not None:
                mantem = (~inicios_episodio[t]).to(h.dtype).unsqueeze(1)
                h, c = h * mantem, c * mantem
            h, c = self.lstm(caracteristicas[t], (h, c))
            saidas.append(h)
        saida = torch.stack(saidas)

        logits = self.cabeca_politica(saida)
        valores = self.cabeca_valor(saida).squeeze(-1)
        if passo_unico:
            logits, valores = logits[0], valores[0]
        return logits, valores, (h, c)


def politica_adiante(
    rede: RedePolitica, observacoes: torch.Tensor, estado: EstadoRecorrente
) -> Tuple[torch.Tensor, torch.Tensor, EstadoRecorrente]:
    """Um passo da política sobre um lote (B, V, V, 3)."""
    return rede(observacoes, estado)
