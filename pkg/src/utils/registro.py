import csv
import logging
import os
from pathlib import Path
from typing import Callable, Iterable, Mapping, Sequence, Union

from .erros import ErroConfiguracao

FORMATO_LOG = "[%(asctime)s][%(levelname)s] %(name)s: %(message)s"
VARIAVEL_DIRETORIO_LOG = "RIDE_LOG_DIR"
DIRETORIO_LOG_PADRAO = "resultados"


def configurar_logging(nivel: int = logging.INFO) -> None:
    """
    Instala um único handler de terminal no logger raiz do pacote.

    Parametros:
    - nivel: Nível mínimo das mensagens mostradas.
    """
    raiz = logging.getLogger("src")
    if not any(isinstance(h, logging.StreamHandler) for h in raiz.handlers):
        handler = logging.StreamHandler()
        handler.setFormatter(logging.Formatter(FORMATO_LOG))
        raiz.addHandler(handler)
    raiz.setLevel(nivel)


def diretorio_resultados() -> Path:
    """Retorna a raiz de saída, sobrescrita pela variável de ambiente RIDE_LOG_DIR."""
    return Path(os.environ.get(VARIAVEL_DIRETORIO_LOG, DIRETORIO_LOG_PADRAO))


class EscritorCsv:
    """
    Escreve linhas em um CSV somente por acréscimo, com o cabeçalho gravado uma única vez
    quando o arquivo é novo ou está vazio. Um arquivo existente com outro cabeçalho é recusado.
    """

    def __init__(self, caminho: Union[str, Path], colunas: Sequence[str]):
        self.caminho = Path(caminho)
        self.colunas = list(colunas)
        self.caminho.parent.mkdir(parents=True, exist_ok=True)
        if self.caminho.exists() and self.caminho.stat().st_size > 0:
            with self.caminho.open(newline="") as arquivo:
                cabecalho = next(csv.reader(arquivo), [])
            if cabecalho != self.colunas:
                raise ErroConfiguracao(f"Cabeçalho de '{self.caminho}' difere do esperado: {cabecalho}.")
        else:
            with self.caminho.open("w", newline="") as arquivo:
                csv.writer(arquivo).writerow(self.colunas)

    def escrever(self, linha: Mapping[str, object]) -> None:
        self.escrever_varias([linha])

    def escrever_varias(self, linhas: Iterable[Mapping[str, object]]) -> None:
        with self.caminho.open("a", newline="") as arquivo:
            escritor = csv.DictWriter(arquivo, fieldnames=self.colunas)
            escritor.writerows(linhas)

    def truncar(self, manter: Callable[[Mapping[str, str]], bool]) -> None:
        """Reescreve o arquivo mantendo apenas as linhas aceitas, usado ao retomar um treino."""
        with self.caminho.open(newline="") as arquivo:
            linhas = [linha for linha in csv.DictReader(arquivo) if manter(linha)]
        with self.caminho.open("w", newline="") as arquivo:
            escritor = csv.DictWriter(arquivo, fieldnames=self.colunas)
            escritor.writeheader()
            escritor.writerows(linhas)

