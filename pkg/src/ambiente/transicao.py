import logging
from typing import Tuple

import numpy as np

from src.utils import Constantes
from src.utils.erros import ErroConfiguracao, ErroContrato

from .certificador import certificar_alcancavel
from .estado_ambiente import EstadoAmbiente, PoseAgente
from .geradores import GERADORES, EstadoGeracao
from .objetos import (
    Acao,
    CARACTERE_AGENTE,
    CARACTERE_TIPO,
    Direcao,
    EstadoPorta,
    Interacao,
    TIPOS_PEGAVEIS,
    TipoObjeto,
    VETOR_DIRECAO,
)
from .observacao import codificar_observacao
from .tarefas import EspecificacaoTarefa, TipoTarefa

logger = logging.getLogger(__name__)

RECOMPENSA_COLISAO = -1.0


def recompensa_sucesso(passo: int, max_passos: int) -> float:
    """Recompensa de sucesso decrescente com o número de passos já usados no episódio."""
    return 1.0 - 0.9 * (passo / max_passos)


def reiniciar(tarefa: EspecificacaoTarefa, semente: int) -> Tuple[EstadoAmbiente, np.ndarray]:
    """
    Gera um novo episódio da tarefa.

    Parametros:
    - tarefa: Especificação da tarefa.
    - semente: Semente do episódio. No modo singleton o layout vem de 'tarefa.semente_singleton'.

    Retorna:
    - Uma tupla com o estado inicial e a observação inicial.
    """
    if not isinstance(tarefa, EspecificacaoTarefa):
        raise ErroConfiguracao("Esperado objeto do tipo 'EspecificacaoTarefa'.")
    tarefa.validar()

    semente_layout = tarefa.semente_singleton if tarefa.semente_singleton is not None else semente
    gerador = GERADORES[tarefa.tipo](tarefa)

    for tentativa in range(Constantes.TENTATIVAS_GERACAO):
        rng = np.random.default_rng([int(semente_layout) & 0xFFFFFFFF, tentativa])
        layout, status = gerador.gerar(rng)
        if status != EstadoGeracao.GERADO:
            continue
        construtor = layout.construtor
        estado = EstadoAmbiente(
            tarefa=tarefa,
            grade=construtor.grade,
            conteudo=construtor.conteudo,
            salas=construtor.salas,
            agente=layout.agente,
            passo=0,
            max_passos=tarefa.max_passos,
            semente_episodio=int(semente) & 0xFFFFFFFF,
            entidades_dinamicas=layout.entidades_dinamicas,
            tv=layout.tv,
            alvo=layout.alvo,
            num_salas=layout.num_salas,
        )
        if certificar_alcancavel(estado):
            for array in (estado.grade, estado.conteudo, estado.salas):
                array.setflags(write=False)
            return estado, codificar_observacao(estado)
        logger.debug("Layout %d da semente %d reprovado pelo certificador.", tentativa, semente_layout)

    raise ErroConfiguracao(f"Não foi possível gerar '{tarefa.nome}' com a semente {semente_layout}.")


def posicao_frente(estado: EstadoAmbiente) -> Tuple[int, int]:
    dx, dy = VETOR_DIRECAO[estado.agente.direcao]
    return estado.agente.x + dx, estado.agente.y + dy


def _celula(estado: EstadoAmbiente, posicao: Tuple[int, int]) -> np.ndarray:
    x, y = posicao
    if 0 <= x < estado.largura and 0 <= y < estado.altura:
        return estado.grade[y, x]
    return np.array((TipoObjeto.PAREDE, 5, 0), dtype=np.uint8)


def _mover_obstaculos(estado: EstadoAmbiente, grade: np.ndarray, rng: np.random.Generator):
    """Cada obstáculo salta para uma célula vazia aleatória da vizinhança 3x3, ou fica onde está."""
    novas = []
    for x, y in estado.entidades_dinamicas:
        codigo = grade[y, x].copy()
        grade[y, x] = (TipoObjeto.VAZIO, 0, 0)
        candidatas = [
            (i, j)
            for j in range(y - 1, y + 2)
            for i in range(x - 1, x + 2)
            if 0 <= i < estado.largura
            and 0 <= j < estado.altura
            and grade[j, i, 0] == TipoObjeto.VAZIO
            and (i, j) != estado.agente.posicao
        ]
        destino = candidatas[int(rng.integers(len(candidatas)))]
        grade[destino[1], destino[0]] = codigo
        novas.append(destino)
    return tuple(novas)


def passo(estado: EstadoAmbiente, acao: int) -> Tuple[EstadoAmbiente, np.ndarray, float, bool]:
    """
    Executa uma ação. Toda ação é legal e vira uma não-operação quando não se aplica.

    Parametros:
    - estado: Estado atual, ainda não terminado.
    - acao: Código da ação, de 0 a 6.

    Retorna:
    - Uma tupla com o novo estado, a nova observação, a recompensa e se o episódio terminou.
    """
    if estado.terminado:
        raise ErroContrato("O episódio já terminou; chame 'reiniciar'.")
    acao = Acao(int(acao))

    grade = estado.grade
    conteudo = estado.conteudo
    agente = estado.agente
    entidades = estado.entidades_dinamicas
    recompensa = 0.0
    terminado = False
    rng = estado.rng_passo()

    def editar():
        nonlocal grade, conteudo
        if not grade.flags.writeable:
            grade = grade.copy()
            conteudo = conteudo.copy()

    frente = posicao_frente(estado)
    tipo_frente, cor_frente, flag_frente = (int(v) for v in _celula(estado, frente))
    fx, fy = frente

    colisao = False
    if estado.tarefa.tipo == TipoTarefa.OBSTACULOS_DINAMICOS:
        colisao = acao == Acao.FRENTE and frente in entidades
        editar()
        entidades = _mover_obstaculos(estado, grade, rng)
        tipo_frente, cor_frente, flag_frente = (int(v) for v in _celula(estado, frente))

    if acao == Acao.VIRAR_ESQUERDA:
        agente = PoseAgente(agente.x, agente.y, Direcao((agente.direcao - 1) % 4), agente.carregando)

    elif acao == Acao.VIRAR_DIREITA:
        agente = PoseAgente(agente.x, agente.y, Direcao((agente.direcao + 1) % 4), agente.carregando)

    elif acao == Acao.FRENTE:
        livre = tipo_frente in (TipoObjeto.VAZIO, TipoObjeto.OBJETIVO) or (
            tipo_frente == TipoObjeto.PORTA and flag_frente == EstadoPorta.ABERTA
        )
        if livre and not colisao:
            agente = PoseAgente(fx, fy, agente.direcao, agente.carregando)
            if tipo_frente == TipoObjeto.OBJETIVO:
                recompensa = recompensa_sucesso(estado.passo, estado.max_passos)
                terminado = True

    elif acao == Acao.PEGAR:
        pegavel = tipo_frente in TIPOS_PEGAVEIS and frente != estado.tv and frente not in entidades
        if pegavel and agente.carregando is None:
            editar()
            carregado = (tipo_frente, cor_frente, int(conteudo[fy, fx, 0]), int(conteudo[fy, fx, 1]))
            grade[fy, fx] = (TipoObjeto.VAZIO, 0, 0)
            conteudo[fy, fx] = (0, 0)
            agente = PoseAgente(agente.x, agente.y, agente.direcao, carregado)
            if frente == estado.alvo:
                recompensa = recompensa_sucesso(estado.passo, estado.max_passos)
                terminado = True

    elif acao == Acao.SOLTAR:
        if agente.carregando is not None and tipo_frente == TipoObjeto.VAZIO:
            editar()
            tipo, cor, tipo_contido, cor_contida = agente.carregando
            grade[fy, fx] = (tipo, cor, 0)
            conteudo[fy, fx] = (tipo_contido, cor_contida)
            agente = PoseAgente(agente.x, agente.y, agente.direcao, None)

    elif acao == Acao.ALTERNAR:
        if tipo_frente == TipoObjeto.PORTA:
            if flag_frente == EstadoPorta.TRANCADA:
                carregando = agente.carregando
                if carregando is not None and carregando[0] == TipoObjeto.CHAVE and carregando[1] == cor_frente:
                    editar()
                    grade[fy, fx, 2] = EstadoPorta.ABERTA
            else:
                editar()
                grade[fy, fx, 2] = (
                    EstadoPorta.FECHADA if flag_frente == EstadoPorta.ABERTA else EstadoPorta.ABERTA
                )
        elif tipo_frente == TipoObjeto.CAIXA:
            editar()
            tipo_contido, cor_contida = (int(v) for v in conteudo[fy, fx])
            if tipo_contido == 0:
                grade[fy, fx] = (TipoObjeto.VAZIO, 0, 0)
            else:
                grade[fy, fx] = (tipo_contido, cor_contida, 0)
            conteudo[fy, fx] = (0, 0)

    elif acao == Acao.FEITO:
        if estado.tv is not None:
            editar()
            tx, ty = estado.tv
            grade[ty, tx, 1] = int(rng.integers(Constantes.NUM_CORES))

    if colisao:
        recompensa = RECOMPENSA_COLISAO
        terminado = True

    novo_passo = estado.passo + 1
    if novo_passo >= estado.max_passos:
        terminado = True

    if grade is not estado.grade:
        grade.setflags(write=False)
        conteudo.setflags(write=False)
    novo = estado.com(
        grade=grade,
        conteudo=conteudo,
        agente=agente,
        passo=novo_passo,
        entidades_dinamicas=entidades,
        terminado=terminado,
    )
    return novo, codificar_observacao(novo), recompensa, terminado


def classificar_interacao(antes: EstadoAmbiente, acao: int, depois: EstadoAmbiente) -> Interacao:
    """
    Classifica um passo pela ação e pelo conteúdo da célula à frente antes do passo. Apenas
    interações bem-sucedidas contam: alternar uma porta que continua fechada é 'outra'.

    Parametros:
    - antes: Estado antes do passo.
    - acao: Ação executada.
    - depois: Estado após o passo.

    Retorna:
    - A categoria de interação do passo.
    """
    fx, fy = posicao_frente(antes)
    if not (0 <= fx < antes.largura and 0 <= fy < antes.altura):
        return Interacao.OUTRA
    tipo, _, flag = (int(v) for v in antes.grade[fy, fx])
    if acao == Acao.ALTERNAR and tipo == TipoObjeto.PORTA:
        if flag != EstadoPorta.ABERTA and depois.grade[fy, fx, 2] == EstadoPorta.ABERTA:
            return Interacao.ABRIR_PORTA
    if acao == Acao.ALTERNAR and tipo == TipoObjeto.CAIXA:
        return Interacao.ABRIR_CAIXA
    if acao == Acao.PEGAR and antes.agente.carregando is None and depois.agente.carregando is not None:
        if tipo == TipoObjeto.BOLA:
            return Interacao.PEGAR_BOLA
        if tipo == TipoObjeto.CHAVE:
            return Interacao.PEGAR_CHAVE
    if acao == Acao.SOLTAR and antes.agente.carregando is not None and depois.agente.carregando is None:
        if antes.agente.carregando[0] == TipoObjeto.CHAVE:
            return Interacao.SOLTAR_CHAVE
    return Interacao.OUTRA


def sala_do_agente(estado: EstadoAmbiente) -> int:
    return int(estado.salas[estado.agente.y, estado.agente.x])


def despejar_layout(estado: EstadoAmbiente) -> str:
    """
    Mapa em texto do estado, um caractere por célula, seguido da legenda.

    Parametros:
    - estado: Estado do ambiente.

    Retorna:
    - O mapa como texto de várias linhas.
    """
    linhas = []
    for y in range(estado.altura):
        linha = []
        for x in range(estado.largura):
            if (x, y) == estado.agente.posicao:
                linha.append(CARACTERE_AGENTE[estado.agente.direcao])
                continue
            tipo, _, flag = (int(v) for v in estado.grade[y, x])
            caractere = CARACTERE_TIPO.get(TipoObjeto(tipo), "?")
            if tipo == TipoObjeto.PORTA:
                caractere = {EstadoPorta.ABERTA: "/", EstadoPorta.FECHADA: "D", EstadoPorta.TRANCADA: "L"}[
                    EstadoPorta(flag)
                ]
            elif (x, y) == estado.tv:
                caractere = "T"
            elif (x, y) == estado.alvo:
                caractere = "*"
            linha.append(caractere)
        linhas.append("".join(linha))
    legenda = (
        "legenda: # parede, . vazio, D porta fechada, L porta trancada, / porta aberta, K chave, "
        "B bola, X caixa, G objetivo, T tv, * bola alvo, >v<^ agente"
    )
    return "\n".join(linhas + [legenda])
