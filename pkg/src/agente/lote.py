from dataclasses import dataclass, fields
from typing import List

import torch

from src.redes import EstadoRecorrente
from src.utils.erros import ErroContrato


@dataclass
class LoteRollout:
    """
    Desenrolar de T passos em B ambientes, no formato tempo-principal.

    Atributos:
    - observacoes: (T+1, B, V, V, 3) uint8; a observação vista antes de cada ação, mais a do
    passo seguinte ao último, usada para o bootstrap.
    - observacoes_proximas: (T, B, V, V, 3) uint8; a observação que de fato seguiu cada ação,
    a terminal quando o episódio acabou.
    - inicios_episodio: (T+1, B) bool; verdadeiro onde observacoes[t] é a primeira de um episódio.
    - acoes: (T, B) int64.
    - recompensas_extrinsecas / recompensas_intrinsecas: (T, B); a intrínseca sem o peso omega.
    - recompensas: (T, B); a recompensa combinada usada pelo aprendizado.
    - feitos: (T, B) bool; verdadeiro onde o episódio terminou no passo t.
    - logits_comportamento: (T, B, 7), os logits da política que escolheu as ações.
    - estado_inicial: Par (h, c) da LSTM, cada um (B, 256), antes do passo 0.
    """
    observacoes: torch.Tensor
    observacoes_proximas: torch.Tensor
    inicios_episodio: torch.Tensor
    acoes: torch.Tensor
    recompensas_extrinsecas: torch.Tensor
    recompensas_intrinsecas: torch.Tensor
    recompensas: torch.Tensor
    feitos: torch.Tensor
    logits_comportamento: torch.Tensor
    estado_inicial: EstadoRecorrente

    @property
    def comprimento(self) -> int:
        return self.acoes.shape[0]

    @property
    def tamanho_lote(self) -> int:
        return self.acoes.shape[1]

    def validar(self) -> None:
        """Confere a consistência dos formatos; levanta ErroContrato na primeira divergência."""
        t, b = self.acoes.shape
        esperados = {
            "observacoes": (t + 1, b),
            "observacoes_proximas": (t, b),
            "inicios_episodio": (t + 1, b),
            "recompensas_extrinsecas": (t, b),
            "recompensas_intrinsecas": (t, b),
            "recompensas": (t, b),
            "feitos": (t, b),
            "logits_comportamento": (t, b),
        }
        for nome, prefixo in esperados.items():
            formato = tuple(getattr(self, nome).shape[:2])
            if formato != prefixo:
                raise ErroContrato(f"'{nome}' tem formato {formato}, esperado {prefixo} nos dois primeiros eixos.")
        h, c = self.estado_inicial
        if h.shape[0] != b or c.shape[0] != b:
            raise ErroContrato("O estado recorrente inicial não corresponde ao tamanho do lote.")


def concatenar_lotes(lotes: List[LoteRollout]) -> LoteRollout:
    """Junta desenrolares de mesmo comprimento ao longo do eixo dos ambientes."""
    if not lotes:
        raise ErroContrato("Nenhum lote para concatenar.")
    if len(lotes) == 1:
        return lotes[0]
    if len({lote.comprimento for lote in lotes}) != 1:
        raise ErroContrato("Lotes com comprimentos de desenrolar diferentes.")
    campos = {}
    for campo in fields(LoteRollout):
        if campo.name == "estado_inicial":
            continue
        campos[campo.name] = torch.cat([getattr(lote, campo.name) for lote in lotes], dim=1)
    h = torch.cat([lote.estado_inicial[0] for lote in lotes], dim=0)
    c = torch.cat([lote.estado_inicial[1] for lote in lotes], dim=0)
    return LoteRollout(estado_inicial=(h, c), **campos)
