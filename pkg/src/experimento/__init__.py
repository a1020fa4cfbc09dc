from .config import ConfigExperimento, config_de_dict, diretorio_execucao, ler_config, salvar_config
from .registro_treino import (
    COLUNAS_DIAGNOSTICO,
    COLUNAS_REGISTRO,
    RegistroDiagnosticos,
    RegistroTreino,
    ler_registro,
)
from .checkpoints import (
    EstadoTreino,
    carregar_estado_treino,
    carregar_politica,
    existe_checkpoint,
    salvar_estado_treino,
)
from .avaliacao import avaliar
