from .redes import (
    EstadoRecorrente,
    RedePolitica,
    TroncoConvolucional,
    inicializar_ortogonal,
    lado_saida_convolucoes,
    politica_adiante,
)
from .otimizacao import ArmazemParametros, ConfigOtimizacao, passo_rmsprop
from .checkpoint import carregar_checkpoint, carregar_tensores, salvar_checkpoint, salvar_tensores
