from .config import ConfigRecompensa, Metodo, config_recompensa_padrao
from .contagens import ArmazemContagens, ContagemGlobal, mesclar_delta, visita_episodica, visita_global
from .rnd import ParRnd, RedeRnd, criar_par_rnd, erro_rnd, perda_rnd
from .recompensas import (
    combinar_recompensas,
    recompensa_ablacao,
    recompensa_contagem,
    recompensa_icm,
    recompensa_ride,
    recompensa_rnd,
)
from .tracos import COLUNAS_TRACO, EscritorTracos, RegistroTraco, ler_tracos
