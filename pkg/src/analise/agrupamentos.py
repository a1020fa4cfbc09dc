from typing import Callable, Dict

import numpy as np
import pandas as pd

from src.ambiente import Acao, Interacao
from src.utils.erros import ErroConfiguracao

GRUPO_OUTRAS = "outras"

Predicado = Callable[[pd.DataFrame], pd.Series]

# Um passo pertence ao primeiro grupo cujo predicado aceita; o resto vai para 'outras'
GRUPOS_MULTISALA: Dict[str, Predicado] = {
    "abrir_porta": lambda t: t["interacao"] == Interacao.ABRIR_PORTA,
    "virar": lambda t: t["acao"].isin([Acao.VIRAR_ESQUERDA, Acao.VIRAR_DIREITA]),
    "frente": lambda t: t["acao"] == Acao.FRENTE,
}

GRUPOS_OBJETOS: Dict[str, Predicado] = {
    "abrir_porta": lambda t: t["interacao"] == Interacao.ABRIR_PORTA,
    "pegar_bola": lambda t: t["interacao"] == Interacao.PEGAR_BOLA,
    "pegar_chave": lambda t: t["interacao"] == Interacao.PEGAR_CHAVE,
    "soltar_chave": lambda t: t["interacao"] == Interacao.SOLTAR_CHAVE,
}

AGRUPAMENTOS = {"multiroom": GRUPOS_MULTISALA, "objetos": GRUPOS_OBJETOS}


def agrupamento_de_nome(nome: str) -> Dict[str, Predicado]:
    if nome not in AGRUPAMENTOS:
        raise ErroConfiguracao(f"Agrupamento desconhecido '{nome}'. Válidos: {', '.join(AGRUPAMENTOS)}.")
    return AGRUPAMENTOS[nome]


def nomes_grupos(agrupamento: Dict[str, Predicado]) -> list:
    return list(agrupamento) + [GRUPO_OUTRAS]


def rotular_grupos(tracos: pd.DataFrame, agrupamento: Dict[str, Predicado]) -> pd.Series:
    """
    Rótulo de grupo de cada passo, derivado da ação e da interação registradas.

    Parametros:
    - tracos: DataFrame com as colunas 'acao' e 'interacao'.
    - agrupamento: Grupos em ordem de prioridade.

    Retorna:
    - Série de rótulos alinhada a 'tracos'.
    """
    rotulos = np.full(len(tracos), GRUPO_OUTRAS, dtype=object)
    livres = np.ones(len(tracos), dtype=bool)
    for nome, predicado in agrupamento.items():
        aceitos = livres & np.asarray(predicado(tracos), dtype=bool)
        rotulos[aceitos] = nome
        livres &= ~aceitos
    return pd.Series(rotulos, index=tracos.index, name="grupo")


def rotular_registro(acao: int, interacao: int, agrupamento: Dict[str, Predicado]) -> str:
    """Rótulo de um único passo, para agregações em fluxo."""
    return rotular_grupos(pd.DataFrame({"acao": [acao], "interacao": [interacao]}), agrupamento).iloc[0]
