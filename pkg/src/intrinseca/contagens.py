from collections import Counter
from typing import Dict, Mapping, Optional


class ContagemGlobal:
    """
    Visão de um ator sobre a tabela global de visitas: a tabela do aprendiz (só leitura) mais
    as visitas locais ainda não entregues. O aprendiz é o único que escreve na tabela base.
    """

    def __init__(self, base: Optional[Dict[int, int]] = None):
        self.base = base if base is not None else {}
        self.delta: Counter = Counter()

    def visitar(self, chave: int) -> int:
        self.delta[chave] += 1
        return self.contagem(chave)

    def contagem(self, chave: int) -> int:
        return self.base.get(chave, 0) + self.delta[chave]

    def extrair_delta(self) -> Counter:
        delta, self.delta = self.delta, Counter()
        return delta


def mesclar_delta(tabela: Dict[int, int], delta: Mapping[int, int]) -> None:
    """Soma as visitas entregues por um ator à tabela global."""
    for chave, visitas in delta.items():
        tabela[chave] = tabela.get(chave, 0) + visitas


class ArmazemContagens:
    """
    Contagens de visitas de um ambiente: episódicas, zeradas a cada episódio, e globais,
    acumuladas ao longo de todo o treino.
    """

    def __init__(self, contagem_global: Optional[ContagemGlobal] = None):
        self.episodico: Counter = Counter()
        self.global_ = contagem_global if contagem_global is not None else ContagemGlobal()

    def reiniciar_episodio(self) -> None:
        self.episodico.clear()


def visita_episodica(armazem: ArmazemContagens, chave: int) -> int:
    """
    Incrementa e retorna a contagem episódica da chave; a primeira visita retorna 1.

    Parametros:
    - armazem: Contagens do ambiente.
    - chave: Hash da observação.

    Retorna:
    - A contagem após a visita.
    """
    armazem.episodico[chave] += 1
    return armazem.episodico[chave]


def visita_global(armazem: ArmazemContagens, chave: int) -> int:
    return armazem.global_.visitar(chave)
