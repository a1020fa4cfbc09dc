from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Tuple

import numpy as np

from src.utils import Constantes

from .construtor_grade import ConstrutorGrade, sortear_cor
from .estado_ambiente import PoseAgente, Posicao
from .objetos import Celula, Cor, Direcao, EstadoPorta, PAREDE, TipoObjeto, VETOR_DIRECAO
from .tarefas import EspecificacaoTarefa, TipoTarefa


class EstadoGeracao(Enum):
    GERADO = 1
    FALHA_POSICIONAMENTO = -1
    INALCANCAVEL = -2


@dataclass
class LayoutGerado:
    construtor: ConstrutorGrade
    agente: PoseAgente
    num_salas: int = 1
    entidades_dinamicas: Tuple[Posicao, ...] = ()
    tv: Optional[Posicao] = None
    alvo: Optional[Posicao] = None


class GeradorBase:
    """
    Classe base dos geradores procedurais. Um gerador recebe um gerador de números aleatórios
    já semeado e constrói um layout; o mesmo estado do gerador sempre produz o mesmo layout.
    """

    def __init__(self, tarefa: EspecificacaoTarefa):
        self.tarefa = tarefa

    def gerar(self, rng: np.random.Generator) -> Tuple[Optional[LayoutGerado], EstadoGeracao]:
        """
        Constrói um layout da tarefa.

        Parametros:
        - rng: Gerador de números aleatórios da tentativa.

        Retorna:
        - Uma tupla com o layout (ou None) e o estado da geração.
        """
        raise NotImplementedError("Método não implementado")


def _sortear_agente(
    construtor: ConstrutorGrade, rng: np.random.Generator, x: int, y: int, largura: int, altura: int
) -> Optional[PoseAgente]:
    posicao = construtor.sortear_posicao_vazia(rng, x, y, largura, altura)
    if posicao is None:
        return None
    return PoseAgente(posicao[0], posicao[1], Direcao(int(rng.integers(4))))


@dataclass
class _Sala:
    topo: Tuple[int, int]
    tamanho: Tuple[int, int]
    porta_entrada: Tuple[int, int]


class GeradorMultiSala(GeradorBase):
    """
    Salas de tamanho aleatório encadeadas por portas fechadas, cada uma presa à parede de
    saída da anterior em uma orientação aleatória. O agente começa na primeira sala e o
    objetivo fica na última.
    """

    def gerar(self, rng):
        tamanho_grade = Constantes.TAMANHO_GRADE_MULTISALA
        num_salas = self.tarefa.num_salas

        salas: List[_Sala] = []
        for _ in range(Constantes.TENTATIVAS_GERACAO):
            porta_inicial = (int(rng.integers(0, tamanho_grade - 2)), int(rng.integers(0, tamanho_grade - 2)))
            tentativa: List[_Sala] = []
            self._colocar_sala(rng, num_salas, tentativa, 2, porta_inicial)
            if len(tentativa) > len(salas):
                salas = tentativa
            if len(salas) >= num_salas:
                break
        if len(salas) < num_salas:
            return None, EstadoGeracao.FALHA_POSICIONAMENTO

        construtor = ConstrutorGrade(tamanho_grade, tamanho_grade)
        # Fora das salas a grade é sólida
        construtor.grade[:, :] = PAREDE.codificar()
        cor_parede, cor_objetivo = self._cores(rng)
        parede = Celula(TipoObjeto.PAREDE, cor_parede)

        for indice, sala in enumerate(salas):
            (x, y), (largura, altura) = sala.topo, sala.tamanho
            for j in range(y + 1, y + altura - 1):
                for i in range(x + 1, x + largura - 1):
                    construtor.colocar((i, j), Celula(TipoObjeto.VAZIO))
            construtor.marcar_sala(x, y, largura, altura, indice)

        # Paredes depois dos interiores, para não apagar paredes compartilhadas
        for sala in salas:
            (x, y), (largura, altura) = sala.topo, sala.tamanho
            construtor.retangulo_paredes(x, y, largura, altura, parede)

        cor_anterior = None
        for indice, sala in enumerate(salas[1:], start=1):
            cor_porta = sortear_cor(rng, excluir=(cor_anterior,) if cor_anterior is not None else ())
            construtor.colocar(sala.porta_entrada, Celula(TipoObjeto.PORTA, cor_porta, EstadoPorta.FECHADA))
            construtor.salas[sala.porta_entrada[1], sala.porta_entrada[0]] = indice
            cor_anterior = cor_porta

        primeira, ultima = salas[0], salas[-1]
        agente = _sortear_agente(construtor, rng, *primeira.topo, *primeira.tamanho)
        if agente is None:
            return None, EstadoGeracao.FALHA_POSICIONAMENTO
        objetivo = construtor.sortear_posicao_vazia(rng, *ultima.topo, *ultima.tamanho, excluir=(agente.posicao,))
        if objetivo is None:
            return None, EstadoGeracao.FALHA_POSICIONAMENTO
        construtor.colocar(objetivo, Celula(TipoObjeto.OBJETIVO, cor_objetivo))

        layout = LayoutGerado(construtor, agente, num_salas=len(salas))
        return self._extras(layout, primeira, rng)

    def _cores(self, rng: np.random.Generator) -> Tuple[Cor, Cor]:
        return Cor.CINZA, Cor.VERDE

    def _extras(self, layout: LayoutGerado, primeira: _Sala, rng: np.random.Generator):
        return layout, EstadoGeracao.GERADO

    def _colocar_sala(
        self,
        rng: np.random.Generator,
        restantes: int,
        salas: List[_Sala],
        parede_entrada: int,
        porta_entrada: Tuple[int, int],
    ) -> bool:
        tamanho_grade = Constantes.TAMANHO_GRADE_MULTISALA
        tamanho_maximo = self.tarefa.tamanho_sala
        largura = int(rng.integers(4, tamanho_maximo + 1))
        altura = int(rng.integers(4, tamanho_maximo + 1))
        px, py = porta_entrada

        # parede_entrada: 0 leste, 1 sul, 2 oeste, 3 norte da nova sala
        if not salas:
            x, y = px, py
        elif parede_entrada == 0:
            x = px - largura + 1
            y = int(rng.integers(py - altura + 2, py))
        elif parede_entrada == 1:
            x = int(rng.integers(px - largura + 2, px))
            y = py - altura + 1
        elif parede_entrada == 2:
            x = px
            y = int(rng.integers(py - altura + 2, py))
        else:
            x = int(rng.integers(px - largura + 2, px))
            y = py

        if x < 0 or y < 0 or x + largura > tamanho_grade or y + altura > tamanho_grade:
            return False

        # A sala anterior compartilha a parede da porta e fica de fora do teste
        for sala in salas[:-1]:
            sem_sobreposicao = (
                x + largura < sala.topo[0]
                or sala.topo[0] + sala.tamanho[0] <= x
                or y + altura < sala.topo[1]
                or sala.topo[1] + sala.tamanho[1] <= y
            )
            if not sem_sobreposicao:
                return False

        salas.append(_Sala((x, y), (largura, altura), porta_entrada))
        if restantes == 1:
            return True

        for _ in range(8):
            paredes = [p for p in range(4) if p != parede_entrada]
            parede_saida = paredes[int(rng.integers(len(paredes)))]
            if parede_saida == 0:
                porta_saida = (x + largura - 1, y + int(rng.integers(1, altura - 1)))
            elif parede_saida == 1:
                porta_saida = (x + int(rng.integers(1, largura - 1)), y + altura - 1)
            elif parede_saida == 2:
                porta_saida = (x, y + int(rng.integers(1, altura - 1)))
            else:
                porta_saida = (x + int(rng.integers(1, largura - 1)), y)
            if self._colocar_sala(rng, restantes - 1, salas, (parede_saida + 2) % 4, porta_saida):
                break
        return True


class GeradorMultiSalaTV(GeradorMultiSala):
    """MultiRoom com uma bola na primeira sala que muda de cor quando o agente usa a ação 'feito'."""

    def _extras(self, layout, primeira, rng):
        construtor = layout.construtor
        (x, y), (largura, altura) = primeira.topo, primeira.tamanho
        # Só células sem portas vizinhas, para a TV não bloquear a saída
        candidatas = [
            p
            for p in construtor.posicoes_vazias(x, y, largura, altura, excluir=(layout.agente.posicao,))
            if not any(
                construtor.na_grade((p[0] + dx, p[1] + dy))
                and construtor.tipo((p[0] + dx, p[1] + dy)) == TipoObjeto.PORTA
                for dx, dy in VETOR_DIRECAO.values()
            )
        ]
        if not candidatas:
            return None, EstadoGeracao.FALHA_POSICIONAMENTO
        tv = candidatas[int(rng.integers(len(candidatas)))]
        construtor.colocar(tv, Celula(TipoObjeto.BOLA, sortear_cor(rng)))
        layout.tv = tv
        return layout, EstadoGeracao.GERADO


class GeradorMultiSalaCores(GeradorMultiSala):
    """MultiRoom em que as cores das paredes e do objetivo são sorteadas de um conjunto a cada episódio."""

    def _cores(self, rng):
        cores = self.tarefa.conjunto_cores
        return cores[int(rng.integers(len(cores)))], cores[int(rng.integers(len(cores)))]


class GradeSalas:
    """
    Grade regular de salas quadradas de lado 'tamanho_sala' (incluindo paredes), com paredes
    compartilhadas entre salas vizinhas. A sala (i, j) está na coluna i e na linha j.
    """

    def __init__(self, num_colunas: int, num_linhas: int, tamanho_sala: int):
        self.num_colunas = num_colunas
        self.num_linhas = num_linhas
        self.tamanho_sala = tamanho_sala
        lado = tamanho_sala - 1
        self.construtor = ConstrutorGrade(lado * num_colunas + 1, lado * num_linhas + 1)
        for j in range(num_linhas):
            for i in range(num_colunas):
                x, y = self.topo(i, j)
                self.construtor.retangulo_paredes(x, y, tamanho_sala, tamanho_sala)
                self.construtor.marcar_sala(x, y, tamanho_sala, tamanho_sala, j * num_colunas + i)

    def topo(self, i: int, j: int) -> Tuple[int, int]:
        return i * (self.tamanho_sala - 1), j * (self.tamanho_sala - 1)

    def vizinha(self, i: int, j: int, direcao: Direcao) -> Optional[Tuple[int, int]]:
        dx, dy = VETOR_DIRECAO[direcao]
        if 0 <= i + dx < self.num_colunas and 0 <= j + dy < self.num_linhas:
            return i + dx, j + dy
        return None

    def posicoes_parede(self, i: int, j: int, direcao: Direcao) -> List[Posicao]:
        """Posições da parede da sala (i, j) no lado 'direcao', sem os cantos."""
        x, y = self.topo(i, j)
        lado = self.tamanho_sala - 1
        if direcao == Direcao.LESTE:
            return [(x + lado, y + k) for k in range(1, lado)]
        if direcao == Direcao.OESTE:
            return [(x, y + k) for k in range(1, lado)]
        if direcao == Direcao.SUL:
            return [(x + k, y + lado) for k in range(1, lado)]
        return [(x + k, y) for k in range(1, lado)]

    def adicionar_porta(
        self, rng: np.random.Generator, i: int, j: int, direcao: Direcao, cor: Cor, estado: EstadoPorta
    ) -> Posicao:
        posicoes = self.posicoes_parede(i, j, direcao)
        posicao = posicoes[int(rng.integers(len(posicoes)))]
        self.construtor.colocar(posicao, Celula(TipoObjeto.PORTA, cor, estado))
        self.construtor.salas[posicao[1], posicao[0]] = j * self.num_colunas + i
        return posicao

    def remover_parede(self, i: int, j: int, direcao: Direcao) -> None:
        for posicao in self.posicoes_parede(i, j, direcao):
            self.construtor.colocar(posicao, Celula(TipoObjeto.VAZIO))
            self.construtor.salas[posicao[1], posicao[0]] = j * self.num_colunas + i

    def sortear_em_sala(
        self, rng: np.random.Generator, i: int, j: int, excluir: Tuple[Posicao, ...] = ()
    ) -> Optional[Posicao]:
        x, y = self.topo(i, j)
        return self.construtor.sortear_posicao_vazia(
            rng, x + 1, y + 1, self.tamanho_sala - 2, self.tamanho_sala - 2, excluir
        )


class GeradorKeyCorridor(GeradorBase):
    """
    Três linhas de salas de lado 3. A coluna do meio forma um corredor onde o agente começa;
    uma sala da direita, trancada, guarda a bola alvo e a chave fica em uma sala da esquerda.
    """

    NUM_LINHAS = 3
    TAMANHO_SALA = 3

    def gerar(self, rng):
        salas = GradeSalas(3, self.NUM_LINHAS, self.TAMANHO_SALA)
        for j in range(1, self.NUM_LINHAS):
            salas.remover_parede(1, j, Direcao.NORTE)

        linha_trancada = int(rng.integers(self.NUM_LINHAS))
        cor_trancada = sortear_cor(rng)
        salas.adicionar_porta(rng, 2, linha_trancada, Direcao.OESTE, cor_trancada, EstadoPorta.TRANCADA)
        alvo = salas.sortear_em_sala(rng, 2, linha_trancada)
        salas.construtor.colocar(alvo, Celula(TipoObjeto.BOLA, sortear_cor(rng)))

        linha_chave = int(rng.integers(self.NUM_LINHAS))
        chave = salas.sortear_em_sala(rng, 0, linha_chave)
        salas.construtor.colocar(chave, Celula(TipoObjeto.CHAVE, cor_trancada))

        agente = _sortear_agente(
            salas.construtor, rng, *salas.topo(1, self.NUM_LINHAS // 2), self.TAMANHO_SALA, self.TAMANHO_SALA
        )
        if agente is None:
            return None, EstadoGeracao.FALHA_POSICIONAMENTO

        self._conectar_todas(salas, rng, bloqueadas={(2, linha_trancada)})
        layout = LayoutGerado(salas.construtor, agente, num_salas=3 * self.NUM_LINHAS, alvo=alvo)
        return layout, EstadoGeracao.GERADO

    def _conectar_todas(self, salas: GradeSalas, rng: np.random.Generator, bloqueadas: set) -> None:
        """Adiciona portas fechadas entre componentes desconexas até todas as salas se ligarem."""
        componente = {
            (i, j): (i, j) for i in range(salas.num_colunas) for j in range(salas.num_linhas)
        }

        def raiz(sala):
            while componente[sala] != sala:
                sala = componente[sala]
            return sala

        # O corredor já está unido
        for j in range(1, salas.num_linhas):
            componente[raiz((1, j))] = raiz((1, 0))

        livres = [s for s in componente if s not in bloqueadas]
        while len({raiz(s) for s in livres}) > 1:
            sala = livres[int(rng.integers(len(livres)))]
            direcao = Direcao(int(rng.integers(4)))
            vizinha = salas.vizinha(*sala, direcao)
            if vizinha is None or vizinha in bloqueadas or raiz(sala) == raiz(vizinha):
                continue
            salas.adicionar_porta(rng, *sala, direcao, sortear_cor(rng), EstadoPorta.FECHADA)
            componente[raiz(vizinha)] = raiz(sala)


class GeradorObstructedMaze(GeradorBase):
    """
    Labirinto 3x3 de salas de lado 6. O agente começa na sala central; uma sala vizinha e depois
    uma sala de canto são alcançadas por portas trancadas, cada uma bloqueada por uma bola do
    lado do agente e aberta por uma chave escondida em uma caixa da sala anterior. A bola alvo
    fica na sala de canto.
    """

    TAMANHO_SALA = 6

    def gerar(self, rng):
        salas = GradeSalas(3, 3, self.TAMANHO_SALA)
        construtor = salas.construtor
        lados = [Direcao.LESTE, Direcao.SUL, Direcao.OESTE, Direcao.NORTE]
        lado = lados[int(rng.integers(4))]
        intermediaria = salas.vizinha(1, 1, lado)
        laterais = [d for d in lados if d not in (lado, Direcao((lado + 2) % 4))]
        canto = salas.vizinha(*intermediaria, laterais[int(rng.integers(2))])

        cores_usadas: Tuple[Cor, ...] = ()
        ocupadas: Tuple[Posicao, ...] = ()
        caminho = [((1, 1), lado, intermediaria), (intermediaria, self._direcao_entre(intermediaria, canto), canto)]
        for origem, direcao, _ in caminho:
            cor = sortear_cor(rng, excluir=cores_usadas)
            cores_usadas += (cor,)
            porta = salas.adicionar_porta(rng, *origem, direcao, cor, EstadoPorta.TRANCADA)
            # Bola obstruindo a porta pelo lado de quem chega
            dx, dy = VETOR_DIRECAO[direcao]
            obstrucao = (porta[0] - dx, porta[1] - dy)
            construtor.colocar(obstrucao, Celula(TipoObjeto.BOLA, sortear_cor(rng)))
            ocupadas += (obstrucao,)
            caixa = salas.sortear_em_sala(rng, *origem, excluir=ocupadas)
            if caixa is None:
                return None, EstadoGeracao.FALHA_POSICIONAMENTO
            construtor.colocar(
                caixa, Celula(TipoObjeto.CAIXA, sortear_cor(rng), contido=(TipoObjeto.CHAVE, cor))
            )
            ocupadas += (caixa,)

        alvo = salas.sortear_em_sala(rng, *canto)
        construtor.colocar(alvo, Celula(TipoObjeto.BOLA, sortear_cor(rng)))

        x, y = salas.topo(1, 1)
        agente = _sortear_agente(construtor, rng, x + 1, y + 1, self.TAMANHO_SALA - 2, self.TAMANHO_SALA - 2)
        if agente is None:
            return None, EstadoGeracao.FALHA_POSICIONAMENTO
        return LayoutGerado(construtor, agente, num_salas=9, alvo=alvo), EstadoGeracao.GERADO

    @staticmethod
    def _direcao_entre(origem: Tuple[int, int], destino: Tuple[int, int]) -> Direcao:
        delta = (destino[0] - origem[0], destino[1] - origem[1])
        return next(d for d, v in VETOR_DIRECAO.items() if v == delta)


class GeradorObstaculosDinamicos(GeradorBase):
    """Sala vazia com o objetivo no canto inferior direito e bolas que se movem a cada passo."""

    def gerar(self, rng):
        lado = self.tarefa.tamanho_grade
        construtor = ConstrutorGrade(lado, lado)
        construtor.retangulo_paredes(0, 0, lado, lado)
        construtor.marcar_sala(0, 0, lado, lado, 0)
        construtor.colocar((lado - 2, lado - 2), Celula(TipoObjeto.OBJETIVO, Cor.VERDE))

        agente = _sortear_agente(construtor, rng, 1, 1, lado - 2, lado - 2)
        if agente is None:
            return None, EstadoGeracao.FALHA_POSICIONAMENTO

        obstaculos: Tuple[Posicao, ...] = ()
        for _ in range(self.tarefa.num_obstaculos):
            posicao = construtor.sortear_posicao_vazia(rng, 1, 1, lado - 2, lado - 2, excluir=(agente.posicao,))
            if posicao is None:
                return None, EstadoGeracao.FALHA_POSICIONAMENTO
            construtor.colocar(posicao, Celula(TipoObjeto.BOLA, Cor.AZUL))
            obstaculos += (posicao,)
        return LayoutGerado(construtor, agente, entidades_dinamicas=obstaculos), EstadoGeracao.GERADO


GERADORES = {
    TipoTarefa.MULTISALA: GeradorMultiSala,
    TipoTarefa.MULTISALA_TV: GeradorMultiSalaTV,
    TipoTarefa.MULTISALA_CORES: GeradorMultiSalaCores,
    TipoTarefa.KEYCORRIDOR: GeradorKeyCorridor,
    TipoTarefa.OBSTRUCTEDMAZE: GeradorObstructedMaze,
    TipoTarefa.OBSTACULOS_DINAMICOS: GeradorObstaculosDinamicos,
}
