from dataclasses import dataclass


@dataclass(frozen=True)
class Constantes:
    """
    Classe de constantes usadas pelo ambiente, pelas redes e pelo treinamento.
    Atributos:
    - TAMANHO_VISAO: Lado da visão egocêntrica do agente, em células.
    - TAMANHO_GRADE_MULTISALA: Lado da grade onde as salas do MultiRoom são colocadas.
    - NUM_ACOES: Número de ações do agente.
    - NUM_CORES: Número de cores possíveis de um objeto.
    - FILTROS_CONV: Número de filtros de cada camada convolucional.
    - UNIDADES_LSTM: Número de unidades da LSTM da política.
    - UNIDADES_OCULTAS_DINAMICA: Largura das camadas ocultas dos modelos direto e inverso.
    - DIMENSAO_SAIDA_RND: Dimensão da saída das redes alvo e preditora do RND.
    - PASSOS_POR_SALA: Limite de passos por sala no MultiRoom.
    - PASSOS_KEYCORRIDOR / PASSOS_OBSTRUCTEDMAZE: Limites de passos das tarefas com chaves.
    - PASSOS_SEM_EXTRINSECA: Limite de passos por episódio na exploração sem recompensa extrínseca.
    - JANELA_MEDIA_MOVEL: Número de episódios da média móvel do retorno.
    - LARGURA_BARRA_PROGRESSO: Número de caracteres da barra de progresso.
    - ALTURA_PADRAO_IMAGEM: Altura das imagens de mapas de calor, preserva a proporção.
    """
    TAMANHO_VISAO = 7
    TAMANHO_GRADE_MULTISALA = 25
    NUM_ACOES = 7
    NUM_CORES = 6
    FILTROS_CONV = 32
    UNIDADES_LSTM = 256
    UNIDADES_OCULTAS_DINAMICA = 256
    DIMENSAO_SAIDA_RND = 128
    PASSOS_POR_SALA = 20
    PASSOS_KEYCORRIDOR = 270
    PASSOS_OBSTRUCTEDMAZE = 576
    PASSOS_SEM_EXTRINSECA = 200
    JANELA_MEDIA_MOVEL = 100
    LARGURA_BARRA_PROGRESSO = 50
    ALTURA_PADRAO_IMAGEM = 500
    TENTATIVAS_GERACAO = 1000
