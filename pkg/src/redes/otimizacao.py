import logging
from dataclasses import dataclass
from typing import Dict, Iterator, Tuple

import torch
from torch import nn

from src.utils.erros import ErroConfiguracao, ErroNumerico

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ConfigOtimizacao:
    """
    Hiperparâmetros do RMSProp.

    Atributos:
    - taxa_aprendizado: Taxa inicial, recozida linearmente até 0.
    - momento: Momento do RMSProp.
    - epsilon: Termo somado ao denominador.
    - norma_maxima: Norma global máxima dos gradientes de cada armazém.
    - passos_recozimento: Número de atualizações até a taxa chegar a 0.
    - alfa: Decaimento da média dos quadrados dos gradientes.
    """
    taxa_aprendizado: float = 0.0001
    momento: float = 0.0
    epsilon: float = 0.01
    norma_maxima: float = 40.0
    passos_recozimento: int = 1
    alfa: float = 0.99

    def __post_init__(self):
        positivos = dict(
            taxa_aprendizado=self.taxa_aprendizado,
            epsilon=self.epsilon,
            norma_maxima=self.norma_maxima,
            passos_recozimento=self.passos_recozimento,
        )
        for nome, valor in positivos.items():
            if valor <= 0:
                raise ErroConfiguracao(f"'{nome}' deve ser positivo, recebido {valor}.")
        if self.momento < 0:
            raise ErroConfiguracao("O momento não pode ser negativo.")

    def taxa_efetiva(self, passo_global: int) -> float:
        return self.taxa_aprendizado * max(0.0, 1.0 - passo_global / self.passos_recozimento)


class ArmazemParametros:
    """
    Parâmetros nomeados de uma rede junto com seus gradientes (os '.grad' do torch) e os
    acumuladores do RMSProp. Um armazém não treinável guarda uma rede fixa, como o alvo do RND.
    """

    def __init__(self, nome: str, modulo: nn.Module, config: ConfigOtimizacao, treinavel: bool = True):
        self.nome = nome
        self.modulo = modulo
        self.treinavel = treinavel
        self.ultima_norma_gradiente = 0.0
        if treinavel:
            self.otimizador = torch.optim.RMSprop(
                modulo.parameters(),
                lr=config.taxa_aprendizado,
                alpha=config.alfa,
                eps=config.epsilon,
                momentum=config.momento,
                centered=False,
            )
        else:
            self.otimizador = None
            for parametro in modulo.parameters():
                parametro.requires_grad_(False)

    def parametros(self) -> Iterator[Tuple[str, torch.Tensor]]:
        return self.modulo.named_parameters()

    def acumuladores(self) -> Dict[str, torch.Tensor]:
        """Média dos quadrados de cada parâmetro; zeros antes da primeira atualização."""
        resultado = {}
        for nome, parametro in self.parametros():
            estado = self.otimizador.state.get(parametro, {}) if self.otimizador else {}
            resultado[nome] = estado.get("square_avg", torch.zeros_like(parametro)).detach()
        return resultado

    def definir_acumuladores(self, acumuladores: Dict[str, torch.Tensor]) -> None:
        if self.otimizador is None:
            return
        momento = self.otimizador.param_groups[0]["momentum"]
        for nome, parametro in self.parametros():
            if nome not in acumuladores:
                continue
            estado = {"step": torch.tensor(0.0), "square_avg": acumuladores[nome].clone().to(parametro.dtype)}
            if momento > 0:
                estado["momentum_buffer"] = torch.zeros_like(parametro)
            self.otimizador.state[parametro] = estado

    def zerar_gradientes(self) -> None:
        for parametro in self.modulo.parameters():
            parametro.grad = None

    def copiar_de(self, outro: "ArmazemParametros") -> None:
        self.modulo.load_state_dict(outro.modulo.state_dict())


def passo_rmsprop(
    armazem: ArmazemParametros, config: ConfigOtimizacao, passo_global: int
) -> ArmazemParametros:
    """
    Aplica uma atualização RMSProp com corte pela norma global e taxa recozida linearmente.

    Parametros:
    - armazem: Armazém com gradientes já calculados.
    - config: Hiperparâmetros do otimizador.
    - passo_global: Número de atualizações já feitas; a taxa efetiva é taxa * max(0, 1 - passo/total).

    Retorna:
    - O próprio armazém, atualizado e com gradientes zerados. A norma antes do corte fica em
    'ultima_norma_gradiente'.
    """
    if not armazem.treinavel:
        raise ErroConfiguracao(f"O armazém '{armazem.nome}' não é treinável.")

    com_gradiente = []
    for nome, parametro in armazem.parametros():
        if parametro.grad is None:
            continue
        if not torch.isfinite(parametro.grad).all():
            raise ErroNumerico(
                f"Gradiente não finito em '{armazem.nome}.{nome}'.", nome_parametro=f"{armazem.nome}.{nome}"
            )
        com_gradiente.append(parametro)

    if not com_gradiente:
        armazem.ultima_norma_gradiente = 0.0
        return armazem

    norma = nn.utils.clip_grad_norm_(com_gradiente, config.norma_maxima)
    armazem.ultima_norma_gradiente = float(norma)

    for grupo in armazem.otimizador.param_groups:
        grupo["lr"] = config.taxa_efetiva(passo_global)
    armazem.otimizador.step()
    armazem.zerar_gradientes()
    return armazem
