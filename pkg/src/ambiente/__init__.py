from .objetos import Acao, Celula, Cor, Direcao, EstadoPorta, Interacao, TipoObjeto
from .tarefas import (
    CORES_TESTE,
    CORES_TREINO,
    EspecificacaoTarefa,
    FAMILIA_MULTISALA,
    TipoTarefa,
    tarefa_de_nome,
)
from .estado_ambiente import EstadoAmbiente, PoseAgente
from .observacao import codificar_observacao, hash_observacao, serializar_observacao
from .certificador import certificar_alcancavel, custo_estimado_alvo, custo_minimo_objetivo
from .transicao import (
    classificar_interacao,
    despejar_layout,
    passo,
    posicao_frente,
    recompensa_sucesso,
    reiniciar,
    sala_do_agente,
)
from .ambiente_grade import AmbienteGrade
