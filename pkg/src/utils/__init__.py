from .constantes import Constantes
from .erros import ErroCheckpoint, ErroConfiguracao, ErroContrato, ErroExplorador, ErroNumerico
from .registro import EscritorCsv, configurar_logging, diretorio_resultados
from .renderizacao import barra_progresso, converter_contagens_para_imagem, plotar_curvas, salvar_mapa_calor
