from .lote import LoteRollout, concatenar_lotes
from .vtrace import alvos_vtrace, calcular_vtrace, log_prob_acoes
from .perdas import PesosPerda, entropia_politica, perda_rl
from .aprendiz import ConjuntoParametros, DiagnosticosAprendiz, NOMES_ARMAZENS, passo_aprendiz
from .ator import Ator, EpisodioConcluido, ResultadoDesenrolar, semente_ambiente
from .execucao import ExecutorAssincrono, ExecutorSincrono
