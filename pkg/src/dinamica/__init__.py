from .modelos import (
    ModeloDireto,
    ModeloInverso,
    RedeEmbedding,
    embutir,
    erro_quadratico,
    perda_direta,
    perda_inversa,
)
