from .agrupamentos import (
    AGRUPAMENTOS,
    GRUPO_OUTRAS,
    GRUPOS_MULTISALA,
    GRUPOS_OBJETOS,
    agrupamento_de_nome,
    rotular_grupos,
)
from .analises import (
    TabelaRecompensaStreaming,
    curva_decaimento_recompensa,
    estados_distintos_por_episodio,
    indice_sala_por_episodio,
    mapa_recompensa_intrinseca,
    mapa_visitas,
    plotar_curvas_aprendizado,
    plotar_decaimento,
    salvar_mapa,
    tabela_recompensa_por_acao,
)
