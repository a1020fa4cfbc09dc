import logging
from collections import Counter
from dataclasses import dataclass
from typing import Dict, List, Optional

import numpy as np
import torch
from torch.nn import functional as F

from src.ambiente import AmbienteGrade, EspecificacaoTarefa
from src.dinamica import ModeloDireto, RedeEmbedding
from src.intrinseca import (
    ArmazemContagens,
    ConfigRecompensa,
    ContagemGlobal,
    Metodo,
    ParRnd,
    RedeRnd,
    RegistroTraco,
    combinar_recompensas,
    recompensa_ablacao,
    recompensa_icm,
    recompensa_ride,
    recompensa_rnd,
    visita_episodica,
    visita_global,
)
from src.redes import RedePolitica

from .aprendiz import carregar_instantaneo
from .lote import LoteRollout

logger = logging.getLogger(__name__)


@dataclass
class EpisodioConcluido:
    """Resumo de um episódio terminado, usado pelo registro de treino."""
    retorno: float
    passos: int
    media_r_i: float
    sala_maxima: int


@dataclass
class ResultadoDesenrolar:
    """Tudo o que um ator entrega ao aprendiz após um desenrolar."""
    lote: LoteRollout
    episodios: List[EpisodioConcluido]
    registros: List[RegistroTraco]
    delta_contagens: Counter
    frames: int
    indice_ator: int = 0


@dataclass
class _Acumulador:
    episodio: int
    retorno: float = 0.0
    soma_r_i: float = 0.0
    passos: int = 0
    sala_maxima: int = 0


def semente_ambiente(semente: int, indice_ambiente: int) -> int:
    """Primeira semente de episódio de um ambiente; os episódios seguintes usam as seguintes."""
    return int(np.random.SeedSequence([semente, indice_ambiente]).generate_state(1)[0])


class Ator:
    """
    Executa a política de comportamento em 'num_ambientes' ambientes, com uma cópia própria
    das redes, e devolve desenrolares de 'comprimento' passos.

    Parametros:
    - indice: Índice do ator, também usado para numerar episódios de forma única.
    - num_atores: Número total de atores.
    - tarefa: Especificação da tarefa.
    - config_recompensa: Método de exploração e peso omega.
    - num_ambientes / comprimento: B e T dos desenrolares.
    - semente: Semente do experimento.
    - tabela_global: Tabela global de visitas do aprendiz, lida mas nunca escrita pelo ator.
    - sem_extrinseca: Zera a recompensa extrínseca antes da combinação.
    - aleatorio: Ignora a política e sorteia ações uniformemente.
    - registrar_tracos: Guarda um registro por passo para análise.
    """

    def __init__(
        self,
        indice: int,
        num_atores: int,
        tarefa: EspecificacaoTarefa,
        config_recompensa: ConfigRecompensa,
        num_ambientes: int,
        comprimento: int,
        semente: int = 0,
        tabela_global: Optional[Dict[int, int]] = None,
        sem_extrinseca: bool = False,
        aleatorio: bool = False,
        registrar_tracos: bool = False,
    ):
        self.indice = indice
        self.num_atores = num_atores
        self.config_recompensa = config_recompensa
        self.comprimento = comprimento
        self.sem_extrinseca = sem_extrinseca
        self.aleatorio = aleatorio
        self.registrar_tracos = registrar_tracos

        lado = tarefa.tamanho_visao
        self.redes = dict(
            politica=RedePolitica(lado),
            embedding=RedeEmbedding(lado),
            rnd_preditor=RedeRnd(lado),
            rnd_alvo=RedeRnd(lado),
        )
        self.redes["direto"] = ModeloDireto(self.redes["embedding"].dimensao)
        for rede in self.redes.values():
            rede.eval()
            rede.requires_grad_(False)

        self.gerador = torch.Generator().manual_seed(semente_ambiente(semente, 1_000_000 + indice))
        self.contagem_global = ContagemGlobal(tabela_global)
        self.ambientes = [
            AmbienteGrade(tarefa, semente_ambiente(semente, indice * num_ambientes + j)) for j in range(num_ambientes)
        ]
        self.contagens = [ArmazemContagens(self.contagem_global) for _ in self.ambientes]
        self._proximo_episodio = 0
        self._abertos: Dict[int, _Acumulador] = {}
        self._episodio_atual = [0] * num_ambientes
        observacoes = [self._reiniciar(j) for j in range(num_ambientes)]
        self._observacoes = torch.from_numpy(np.stack(observacoes))
        self._inicios = torch.ones(num_ambientes, dtype=torch.bool)
        self._estado = self.redes["politica"].estado_inicial(num_ambientes)

    def _novo_episodio(self) -> int:
        episodio = self._proximo_episodio * self.num_atores + self.indice
        self._proximo_episodio += 1
        return episodio

    def _reiniciar(self, j: int) -> np.ndarray:
        observacao, info = self.ambientes[j].reset()
        self.contagens[j].reiniciar_episodio()
        visita_episodica(self.contagens[j], info["hash"])
        if self.config_recompensa.metodo.usa_contagem_global:
            visita_global(self.contagens[j], info["hash"])
        episodio = self._novo_episodio()
        self._abertos[episodio] = _Acumulador(episodio, sala_maxima=info["sala"])
        self._episodio_atual[j] = episodio
        return observacao

    def atualizar_parametros(self, instantaneo: Dict[str, Dict[str, torch.Tensor]]) -> None:
        carregar_instantaneo(self.redes, instantaneo)

    @torch.no_grad()
    def desenrolar(self) -> ResultadoDesenrolar:
        """Executa T passos em cada ambiente e monta o lote com as recompensas já combinadas."""
        num_ambientes, comprimento = len(self.ambientes), self.comprimento
        estado_inicial = (self._estado[0].clone(), self._estado[1].clone())
        observacoes = [self._observacoes]
        inicios = [self._inicios]
        proximas, acoes, logits_passos, r_e, feitos = [], [], [], [], []
        n_ep = torch.ones(comprimento, num_ambientes)
        n_global = torch.ones(comprimento, num_ambientes)
        infos: List[List[dict]] = []

        for t in range(comprimento):
            logits, _, self._estado = self.redes["politica"](self._observacoes, self._estado, self._inicios.unsqueeze(0))
            if self.aleatorio:
                logits = torch.zeros_like(logits)
            acao = torch.multinomial(F.softmax(logits, dim=-1), 1, generator=self.gerador).squeeze(-1)

            proximas_t, atuais_t, r_e_t, feitos_t, infos_t = [], [], [], [], []
            for j, ambiente in enumerate(self.ambientes):
                observacao, recompensa, terminado, truncado, info = ambiente.step(int(acao[j]))
                feito = terminado or truncado
                n_ep[t, j] = visita_episodica(self.contagens[j], info["hash"])
                if self.config_recompensa.metodo.usa_contagem_global:
                    n_global[t, j] = visita_global(self.contagens[j], info["hash"])
                info["episodio"] = self._episodio_atual[j]
                proximas_t.append(observacao)
                r_e_t.append(recompensa)
                feitos_t.append(feito)
                infos_t.append(info)
                if feito:
                    infos_t[-1]["concluido"] = True
                    observacao = self._reiniciar(j)
                atuais_t.append(observacao)

            self._observacoes = torch.from_numpy(np.stack(atuais_t))
            self._inicios = torch.tensor(feitos_t, dtype=torch.bool)
            observacoes.append(self._observacoes)
            inicios.append(self._inicios)
            proximas.append(torch.from_numpy(np.stack(proximas_t)))
            acoes.append(acao)
            logits_passos.append(logits)
            r_e.append(torch.tensor(r_e_t, dtype=torch.float32))
            feitos.append(self._inicios.clone())
            infos.append(infos_t)

        observacoes_t = torch.stack(observacoes)
        proximas_t = torch.stack(proximas)
        acoes_t = torch.stack(acoes)
        recompensas_extrinsecas = torch.stack(r_e)
        r_i = self._recompensas_intrinsecas(observacoes_t[:-1], acoes_t, proximas_t, n_ep, n_global)
        r_e_usada = torch.zeros_like(recompensas_extrinsecas) if self.sem_extrinseca else recompensas_extrinsecas
        lote = LoteRollout(
            observacoes=observacoes_t,
            observacoes_proximas=proximas_t,
            inicios_episodio=torch.stack(inicios),
            acoes=acoes_t,
            recompensas_extrinsecas=recompensas_extrinsecas,
            recompensas_intrinsecas=r_i,
            recompensas=combinar_recompensas(r_e_usada, r_i, self.config_recompensa),
            feitos=torch.stack(feitos),
            logits_comportamento=torch.stack(logits_passos),
            estado_inicial=estado_inicial,
        )
        episodios, registros = self._contabilizar(infos, acoes_t, recompensas_extrinsecas, r_i)
        return ResultadoDesenrolar(
            lote=lote,
            episodios=episodios,
            registros=registros,
            delta_contagens=self.contagem_global.extrair_delta(),
            frames=comprimento * num_ambientes,
            indice_ator=self.indice,
        )

    def _recompensas_intrinsecas(
        self,
        observacoes: torch.Tensor,
        acoes: torch.Tensor,
        proximas: torch.Tensor,
        n_ep: torch.Tensor,
        n_global: torch.Tensor,
    ) -> torch.Tensor:
        metodo = self.config_recompensa.metodo
        if metodo == Metodo.VANILLA:
            return torch.zeros(acoes.shape)
        if metodo == Metodo.CONTAGEM:
            return 1.0 / n_global.sqrt()
        if metodo == Metodo.APENAS_EPISODICA:
            return 1.0 / n_ep.sqrt()
        if metodo == Metodo.RND:
            par = ParRnd(alvo=self.redes["rnd_alvo"], preditor=self.redes["rnd_preditor"])
            return recompensa_rnd(par, proximas)

        phi = self.redes["embedding"](observacoes)
        phi_proximo = self.redes["embedding"](proximas)
        if metodo == Metodo.RIDE:
            return recompensa_ride(phi, phi_proximo, n_ep)
        if metodo == Metodo.ICM:
            return recompensa_icm(self.redes["direto"], phi, acoes, phi_proximo)
        return recompensa_ablacao(metodo, phi, phi_proximo, n_ep)

    def _contabilizar(
        self,
        infos: List[List[dict]],
        acoes: torch.Tensor,
        recompensas_extrinsecas: torch.Tensor,
        r_i: torch.Tensor,
    ):
        episodios: List[EpisodioConcluido] = []
        registros: List[RegistroTraco] = []
        for t, infos_t in enumerate(infos):
            for j, info in enumerate(infos_t):
                episodio = info["episodio"]
                acumulador = self._abertos[episodio]
                acumulador.passos += 1
                acumulador.retorno += float(recompensas_extrinsecas[t, j])
                acumulador.soma_r_i += float(r_i[t, j])
                acumulador.sala_maxima = max(acumulador.sala_maxima, info["sala"])
                if self.registrar_tracos:
                    registros.append(
                        RegistroTraco(
                            episodio=episodio,
                            passo=info["passo"],
                            x=info["x"],
                            y=info["y"],
                            direcao=info["direcao"],
                            acao=int(acoes[t, j]),
                            interacao=info["interacao"],
                            sala=info["sala"],
                            r_i=float(r_i[t, j]),
                            r_e=float(recompensas_extrinsecas[t, j]),
                            hash_obs=info["hash"],
                        )
                    )
                if info.get("concluido"):
                    episodios.append(
                        EpisodioConcluido(
                            retorno=acumulador.retorno,
                            passos=acumulador.passos,
                            media_r_i=acumulador.soma_r_i / acumulador.passos,
                            sala_maxima=acumulador.sala_maxima,
                        )
                    )
                    del self._abertos[episodio]
        return episodios, registros
