import logging
import queue
import threading
from typing import Dict, List, Optional

import torch

from .ator import Ator, ResultadoDesenrolar

logger = logging.getLogger(__name__)

Instantaneo = Dict[str, Dict[str, torch.Tensor]]


class ExecutorSincrono:
    """
    Executa os atores um após o outro na thread do aprendiz, sempre com o instantâneo mais
    recente. Com a mesma configuração e semente o resultado é idêntico bit a bit.
    """

    def __init__(self, atores: List[Ator]):
        self.atores = atores
        self._proximo = 0

    def publicar(self, instantaneo: Instantaneo) -> None:
        for ator in self.atores:
            ator.atualizar_parametros(instantaneo)

    def coletar(self, quantidade: int) -> List[ResultadoDesenrolar]:
        resultados = []
        for _ in range(quantidade):
            resultados.append(self.atores[self._proximo].desenrolar())
            self._proximo = (self._proximo + 1) % len(self.atores)
        return resultados

    def encerrar(self) -> None:
        pass


class TrabalhadorAtor(threading.Thread):
    """Thread que desenrola continuamente um ator e entrega os resultados na fila."""

    def __init__(self, ator: Ator, fila: "queue.Queue[ResultadoDesenrolar]", executor: "ExecutorAssincrono"):
        super().__init__(name=f"ator-{ator.indice}", daemon=True)
        self.ator = ator
        self.fila = fila
        self.executor = executor
        self.versao = -1
        self.erro: Optional[BaseException] = None

    def run(self) -> None:
        try:
            while not self.executor.parar.is_set():
                versao, instantaneo = self.executor.instantaneo_atual()
                if versao != self.versao:
                    self.ator.atualizar_parametros(instantaneo)
                    self.versao = versao
                resultado = self.ator.desenrolar()
                while not self.executor.parar.is_set():
                    try:
                        self.fila.put(resultado, timeout=0.1)
                        break
                    except queue.Full:
                        continue
        except BaseException as erro:
            logger.exception("Ator %d falhou.", self.ator.indice)
            self.erro = erro
            self.executor.parar.set()


class ExecutorAssincrono:
    """
    Um thread por ator e uma fila limitada até o aprendiz. O aprendiz é o único escritor dos
    parâmetros e publica instantâneos versionados que os atores carregam antes de cada desenrolar.
    """

    def __init__(self, atores: List[Ator], tamanho_fila: int):
        self.fila: "queue.Queue[ResultadoDesenrolar]" = queue.Queue(maxsize=tamanho_fila)
        self.parar = threading.Event()
        self._trava = threading.Lock()
        self._versao = 0
        self._instantaneo: Optional[Instantaneo] = None
        self.trabalhadores = [TrabalhadorAtor(ator, self.fila, self) for ator in atores]

    def instantaneo_atual(self):
        with self._trava:
            return self._versao, self._instantaneo

    def publicar(self, instantaneo: Instantaneo) -> None:
        with self._trava:
            self._versao += 1
            self._instantaneo = instantaneo
        for trabalhador in self.trabalhadores:
            if not trabalhador.is_alive() and trabalhador.erro is None and not self.parar.is_set():
                trabalhador.start()

    def coletar(self, quantidade: int) -> List[ResultadoDesenrolar]:
        resultados = []
        while len(resultados) < quantidade:
            try:
                resultados.append(self.fila.get(timeout=0.5))
            except queue.Empty:
                falhas = [t.erro for t in self.trabalhadores if t.erro is not None]
                if falhas:
                    raise falhas[0]
        return resultados

    def encerrar(self) -> None:
        self.parar.set()
        for trabalhador in self.trabalhadores:
            if trabalhador.is_alive():
                trabalhador.join(timeout=5.0)
