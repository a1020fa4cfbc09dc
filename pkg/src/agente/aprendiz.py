import copy
import logging
from dataclasses import asdict, dataclass
from typing import Dict, Optional

import torch

from src.dinamica import ModeloDireto, ModeloInverso, RedeEmbedding, perda_direta, perda_inversa
from src.intrinseca import ConfigRecompensa, ParRnd, RedeRnd, perda_rnd
from src.redes import ArmazemParametros, ConfigOtimizacao, RedePolitica, passo_rmsprop
from src.utils import Constantes
from src.utils.erros import ErroNumerico

from .lote import LoteRollout
from .perdas import PesosPerda, entropia_politica, perda_rl
from .vtrace import alvos_vtrace

logger = logging.getLogger(__name__)

NOMES_ARMAZENS = ("politica", "embedding", "direto", "inverso", "rnd_preditor", "rnd_alvo")


class ConjuntoParametros:
    """
    Todos os armazéns de parâmetros de um treino e o contador de atualizações. O aprendiz é o
    único que escreve neles; os atores recebem cópias por 'instantaneo'.
    """

    def __init__(
        self,
        config: ConfigOtimizacao,
        tamanho_visao: int = Constantes.TAMANHO_VISAO,
        semente: int = 0,
    ):
        torch.manual_seed(semente)
        politica = RedePolitica(tamanho_visao)
        embedding = RedeEmbedding(tamanho_visao)
        alvo = RedeRnd(tamanho_visao)
        self.armazens: Dict[str, ArmazemParametros] = dict(
            politica=ArmazemParametros("politica", politica, config),
            embedding=ArmazemParametros("embedding", embedding, config),
            direto=ArmazemParametros("direto", ModeloDireto(embedding.dimensao), config),
            inverso=ArmazemParametros("inverso", ModeloInverso(embedding.dimensao), config),
            rnd_preditor=ArmazemParametros("rnd_preditor", RedeRnd(tamanho_visao), config),
            rnd_alvo=ArmazemParametros("rnd_alvo", alvo, config, treinavel=False),
        )
        self.tamanho_visao = tamanho_visao
        self.passo_global = 0

    def __getitem__(self, nome: str) -> ArmazemParametros:
        return self.armazens[nome]

    @property
    def politica(self) -> RedePolitica:
        return self.armazens["politica"].modulo

    @property
    def embedding(self) -> RedeEmbedding:
        return self.armazens["embedding"].modulo

    @property
    def direto(self) -> ModeloDireto:
        return self.armazens["direto"].modulo

    @property
    def inverso(self) -> ModeloInverso:
        return self.armazens["inverso"].modulo

    @property
    def par_rnd(self) -> ParRnd:
        return ParRnd(alvo=self.armazens["rnd_alvo"].modulo, preditor=self.armazens["rnd_preditor"].modulo)

    def instantaneo(self) -> Dict[str, Dict[str, torch.Tensor]]:
        """Cópia profunda dos pesos de todas as redes, para publicar aos atores."""
        return {nome: copy.deepcopy(armazem.modulo.state_dict()) for nome, armazem in self.armazens.items()}

    def zerar_gradientes(self) -> None:
        for armazem in self.armazens.values():
            armazem.zerar_gradientes()


@dataclass
class DiagnosticosAprendiz:
    """Escalares de um passo do aprendiz, gravados como uma linha de diagnóstico."""
    perda_rl: float
    perda_direta: float
    perda_inversa: float
    perda_rnd: float
    entropia: float
    norma_gradiente: float
    media_r_i: float

    def como_dict(self) -> Dict[str, float]:
        return asdict(self)


def _finito(diagnosticos: Dict[str, float], perda: torch.Tensor) -> None:
    if not torch.isfinite(perda).all():
        raise ErroNumerico("Perda não finita no passo do aprendiz.", diagnosticos=diagnosticos)


def passo_aprendiz(
    lote: LoteRollout,
    parametros: ConjuntoParametros,
    pesos: PesosPerda,
    config_otimizacao: ConfigOtimizacao,
    config_recompensa: ConfigRecompensa,
    gama: float = 0.99,
    rho_barra: float = 1.0,
    c_barra: float = 1.0,
) -> DiagnosticosAprendiz:
    """
    Uma atualização RMSProp do objetivo conjunto ω_π·L_RL + ω_fw·L_fw + ω_inv·L_inv, seguida
    da atualização do preditor RND quando o método o usa.

    Parametros:
    - lote: Lote completo, com as recompensas já combinadas.
    - parametros: Armazéns de todas as redes; atualizados no lugar.
    - pesos: Pesos do objetivo conjunto.
    - config_otimizacao: Hiperparâmetros do RMSProp.
    - config_recompensa: Método e coeficiente de entropia.
    - gama / rho_barra / c_barra: Parâmetros do V-trace.

    Retorna:
    - Os diagnósticos do passo. Uma perda não finita levanta ErroNumerico com os diagnósticos.
    """
    lote.validar()
    metodo = config_recompensa.metodo
    parametros.zerar_gradientes()

    logits, valores, _ = parametros.politica(lote.observacoes, lote.estado_inicial, lote.inicios_episodio)
    logits_alvo = logits[:-1]
    vs, vantagens = alvos_vtrace(lote, valores, logits_alvo, gama, rho_barra, c_barra)
    l_rl = perda_rl(
        lote.acoes, vs, vantagens, logits_alvo, valores[:-1], config_recompensa.coef_entropia_efetivo
    )

    l_fw = torch.zeros(())
    l_inv = torch.zeros(())
    if metodo.usa_dinamica:
        phi = parametros.embedding(lote.observacoes[:-1])
        phi_proximo = parametros.embedding(lote.observacoes_proximas)
        l_fw = perda_direta(parametros.direto, phi, lote.acoes, phi_proximo).sum(0).mean()
        l_inv = perda_inversa(parametros.inverso, phi, phi_proximo, lote.acoes).sum(0).mean()

    with torch.no_grad():
        entropia = entropia_politica(logits_alvo).mean()
    diagnosticos = dict(
        perda_rl=float(l_rl),
        perda_direta=float(l_fw),
        perda_inversa=float(l_inv),
        perda_rnd=0.0,
        entropia=float(entropia),
        norma_gradiente=0.0,
        media_r_i=float(lote.recompensas_intrinsecas.mean()),
    )

    total = pesos.omega_pi * l_rl + pesos.omega_fw * l_fw + pesos.omega_inv * l_inv
    _finito(diagnosticos, total)
    total.backward()

    atualizar = dict(
        politica=pesos.omega_pi > 0,
        embedding=metodo.usa_dinamica and (pesos.omega_fw > 0 or pesos.omega_inv > 0),
        direto=metodo.usa_dinamica and pesos.omega_fw > 0,
        inverso=metodo.usa_dinamica and pesos.omega_inv > 0,
    )
    for nome, ativo in atualizar.items():
        if ativo:
            passo_rmsprop(parametros[nome], config_otimizacao, parametros.passo_global)
        else:
            parametros[nome].zerar_gradientes()
    diagnosticos["norma_gradiente"] = parametros["politica"].ultima_norma_gradiente if atualizar["politica"] else 0.0

    if metodo.usa_rnd:
        l_rnd = perda_rnd(parametros.par_rnd, lote.observacoes_proximas)
        diagnosticos["perda_rnd"] = float(l_rnd)
        _finito(diagnosticos, l_rnd)
        l_rnd.backward()
        passo_rmsprop(parametros["rnd_preditor"], config_otimizacao, parametros.passo_global)

    parametros.passo_global += 1
    return DiagnosticosAprendiz(**diagnosticos)


def carregar_instantaneo(
    destino: Dict[str, torch.nn.Module], instantaneo: Dict[str, Dict[str, torch.Tensor]], nomes: Optional[tuple] = None
) -> None:
    """Carrega nos módulos de um ator os pesos publicados pelo aprendiz."""
    for nome in nomes or tuple(destino):
        destino[nome].load_state_dict(instantaneo[nome])
