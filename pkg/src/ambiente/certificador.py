import heapq
from typing import Dict, Set

import numpy as np

from .estado_ambiente import EstadoAmbiente, Posicao
from .objetos import Direcao, EstadoPorta, TipoObjeto, VETOR_DIRECAO
from .tarefas import FAMILIA_MULTISALA, TipoTarefa

_CUSTO_GIRO = 1
_CUSTO_FRENTE = 1
# alternar + frente
_CUSTO_PORTA_FECHADA = 2
# pegar, soltar ao lado e frente
_CUSTO_OBJETO_MOVEL = 3
_OBJETOS_MOVEIS = (TipoObjeto.CHAVE, TipoObjeto.BOLA, TipoObjeto.CAIXA)


def custo_minimo_objetivo(estado: EstadoAmbiente) -> float:
    """
    Menor número de ações até o agente pisar no objetivo, por Dijkstra sobre (x, y, direção).
    Portas fechadas custam uma ação extra para serem abertas; portas trancadas e objetos
    bloqueiam a passagem.

    Parametros:
    - estado: Estado recém gerado de uma tarefa da família MultiRoom.

    Retorna:
    - O custo mínimo, ou infinito se o objetivo for inalcançável.
    """
    grade = estado.grade
    inicio = (estado.agente.x, estado.agente.y, int(estado.agente.direcao))
    distancias = {inicio: 0}
    fila = [(0, inicio)]
    while fila:
        custo, (x, y, d) = heapq.heappop(fila)
        if custo > distancias.get((x, y, d), np.inf):
            continue
        if grade[y, x, 0] == TipoObjeto.OBJETIVO:
            return custo

        vizinhos = [((x, y, (d + 1) % 4), _CUSTO_GIRO), ((x, y, (d - 1) % 4), _CUSTO_GIRO)]
        dx, dy = VETOR_DIRECAO[Direcao(d)]
        fx, fy = x + dx, y + dy
        if 0 <= fx < estado.largura and 0 <= fy < estado.altura:
            tipo, _, flag = grade[fy, fx]
            if tipo in (TipoObjeto.VAZIO, TipoObjeto.OBJETIVO) or (
                tipo == TipoObjeto.PORTA and flag == EstadoPorta.ABERTA
            ):
                vizinhos.append(((fx, fy, d), _CUSTO_FRENTE))
            elif tipo == TipoObjeto.PORTA and flag == EstadoPorta.FECHADA:
                vizinhos.append(((fx, fy, d), _CUSTO_PORTA_FECHADA))

        for no, passo in vizinhos:
            novo = custo + passo
            if novo < distancias.get(no, np.inf):
                distancias[no] = novo
                heapq.heappush(fila, (novo, no))
    return np.inf



def _distancias_celulas(estado: EstadoAmbiente, origem: Posicao, cores_destrancadas: Set[int]) -> Dict[Posicao, int]:
    """
    Dijkstra sobre células. Objetos móveis custam o tempo de tirá-los do caminho e portas
    trancadas só passam com a cor destrancada.
    """
    grade = estado.grade
    distancias = {origem: 0}
    fila = [(0, origem)]
    while fila:
        custo, (x, y) = heapq.heappop(fila)
        if custo > distancias[(x, y)]:
            continue
        for dx, dy in VETOR_DIRECAO.values():
            fx, fy = x + dx, y + dy
            if not (0 <= fx < estado.largura and 0 <= fy < estado.altura):
                continue
            tipo, cor, flag = grade[fy, fx]
            if tipo == TipoObjeto.PAREDE:
                continue
            if tipo == TipoObjeto.PORTA and flag == EstadoPorta.TRANCADA:
                if int(cor) not in cores_destrancadas:
                    continue
                passo = _CUSTO_PORTA_FECHADA
            elif tipo == TipoObjeto.PORTA and flag == EstadoPorta.FECHADA:
                passo = _CUSTO_PORTA_FECHADA
            elif tipo in _OBJETOS_MOVEIS:
                passo = _CUSTO_OBJETO_MOVEL
            else:
                passo = _CUSTO_FRENTE
            novo = custo + passo
            if novo < distancias.get((fx, fy), np.inf):
                distancias[(fx, fy)] = novo
                heapq.heappush(fila, (novo, (fx, fy)))
    return distancias


def _cores_bloqueando(estado: EstadoAmbiente, regiao: Dict[Posicao, int], cores: Set[int]) -> Set[int]:
    """Cores das portas trancadas vizinhas da região que ainda não têm chave."""
    bloqueando = set()
    for x, y in regiao:
        for dx, dy in VETOR_DIRECAO.values():
            fx, fy = x + dx, y + dy
            if not (0 <= fx < estado.largura and 0 <= fy < estado.altura):
                continue
            tipo, cor, flag = estado.grade[fy, fx]
            if tipo == TipoObjeto.PORTA and flag == EstadoPorta.TRANCADA and int(cor) not in cores:
                bloqueando.add(int(cor))
    return bloqueando


def custo_estimado_alvo(estado: EstadoAmbiente) -> float:
    """
    Custo de um plano guloso para tarefas com chaves: a cada etapa o agente busca a chave mais
    próxima (solta ou dentro de caixa) de uma porta trancada que o bloqueia, até o alvo entrar
    na região alcançável. Giros não são contados.

    Parametros:
    - estado: Estado recém gerado de KeyCorridor ou ObstructedMaze.

    Retorna:
    - O custo do plano em ações, ou infinito se nenhuma chave útil estiver ao alcance.
    """
    atual = estado.agente.posicao
    cores: Set[int] = set()
    custo = 0
    while True:
        distancias = _distancias_celulas(estado, atual, cores)
        if estado.alvo in distancias:
            return custo + distancias[estado.alvo]
        bloqueando = _cores_bloqueando(estado, distancias, cores)
        chaves = {}
        for x, y in distancias:
            tipo, cor, _ = estado.grade[y, x]
            if tipo == TipoObjeto.CHAVE and int(cor) in bloqueando:
                chaves[(x, y)] = (int(cor), 1)
            elif tipo == TipoObjeto.CAIXA and estado.conteudo[y, x, 0] == TipoObjeto.CHAVE:
                cor_contida = int(estado.conteudo[y, x, 1])
                if cor_contida in bloqueando:
                    # alternar a caixa e pegar a chave
                    chaves[(x, y)] = (cor_contida, 2)
        if not chaves:
            return np.inf
        posicao = min(chaves, key=lambda p: (distancias[p], p))
        cor, interacoes = chaves[posicao]
        # soltar a chave anterior antes de pegar a nova
        custo += distancias[posicao] + interacoes + (1 if cores else 0)
        cores.add(cor)
        atual = posicao


def certificar_alcancavel(estado: EstadoAmbiente) -> bool:
    """
    Certifica que o objetivo do episódio é alcançável dentro do limite de passos.

    Parametros:
    - estado: Estado recém gerado.

    Retorna:
    - True se o solucionador encontra um plano que cabe em 'max_passos'.
    """
    tipo = estado.tarefa.tipo
    if tipo in FAMILIA_MULTISALA:
        return custo_minimo_objetivo(estado) <= estado.max_passos
    if tipo in (TipoTarefa.KEYCORRIDOR, TipoTarefa.OBSTRUCTEDMAZE):
        return custo_estimado_alvo(estado) <= estado.max_passos
    return True
