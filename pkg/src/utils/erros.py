from typing import Dict, Optional


class ErroExplorador(Exception):
    """Erro base de todos os erros levantados pelo explorador."""


class ErroConfiguracao(ErroExplorador, ValueError):
    """Tarefa, método ou configuração de experimento inválidos."""


class ErroContrato(ErroExplorador, ValueError):
    """Violação de contrato: formatos incompatíveis ou entradas fora do domínio."""


class ErroNumerico(ErroExplorador, ArithmeticError):
    """
    Valor não finito encontrado em um gradiente ou perda.

    Parametros:
    - mensagem: Descrição do erro.
    - nome_parametro: Nome do parâmetro com gradiente não finito, se houver.
    - diagnosticos: Valores das perdas no momento do erro, se houver.
    """

    def __init__(
        self,
        mensagem: str,
        nome_parametro: Optional[str] = None,
        diagnosticos: Optional[Dict[str, float]] = None,
    ):
        super().__init__(mensagem)
        self.nome_parametro = nome_parametro
        self.diagnosticos = diagnosticos or {}


class ErroCheckpoint(ErroExplorador, IOError):
    """Checkpoint corrompido ou incompatível com a rede."""
