from pathlib import Path
from typing import List, Optional, Tuple, Union

from src.ambiente import Cor, EspecificacaoTarefa, EstadoAmbiente, certificar_alcancavel, despejar_layout
from src.experimento import ConfigExperimento, avaliar
from src.main import ResultadoTreino, executar_treino, executar_varredura


def treine(config: ConfigExperimento, retomar: bool = False, mostrar_progresso: bool = True) -> ResultadoTreino:
    """
    Interface com o laço de treino.

    Parametros:
    - config: Objeto do tipo 'ConfigExperimento'.
    - retomar: Continua do último checkpoint da execução.
    - mostrar_progresso: Mostra a barra de progresso.

    Retorna:
    - O resultado do treino.
    """
    if not isinstance(config, ConfigExperimento):
        raise TypeError("Esperado objeto do tipo 'ConfigExperimento'.")
    return executar_treino(config, retomar=retomar, mostrar_progresso=mostrar_progresso)


def varra(config: ConfigExperimento, num_sementes: int, retomar: bool = False) -> List[ResultadoTreino]:
    """Interface com a varredura de sementes."""
    if not isinstance(config, ConfigExperimento):
        raise TypeError("Esperado objeto do tipo 'ConfigExperimento'.")
    if not isinstance(num_sementes, int) or isinstance(num_sementes, bool):
        raise TypeError("Esperado inteiro em 'num_sementes'.")
    return executar_varredura(config, num_sementes, retomar=retomar)


def avalie(
    checkpoint: Optional[Union[str, Path]],
    tarefa: EspecificacaoTarefa,
    episodios: int,
    cores: Optional[Tuple[Cor, ...]] = None,
    semente: int = 0,
    caminho_tracos: Optional[Union[str, Path]] = None,
) -> Tuple[float, float]:
    """
    Interface com a avaliação de uma política.

    Parametros:
    - checkpoint: Caminho do checkpoint da política, ou None para a política uniforme.
    - tarefa: Objeto do tipo 'EspecificacaoTarefa'.
    - episodios: Número de episódios.
    - cores: Cores das paredes e do objetivo, opcional.
    - semente: Semente da avaliação.
    - caminho_tracos: CSV de traços, opcional.

    Retorna:
    - Média e desvio padrão dos retornos.
    """
    if checkpoint is not None and not isinstance(checkpoint, (str, Path)):
        raise TypeError("Esperado caminho em 'checkpoint'.")
    if not isinstance(tarefa, EspecificacaoTarefa):
        raise TypeError("Esperado objeto do tipo 'EspecificacaoTarefa'.")
    if not isinstance(episodios, int) or isinstance(episodios, bool):
        raise TypeError("Esperado inteiro em 'episodios'.")
    if cores is not None and not all(isinstance(cor, Cor) for cor in cores):
        raise TypeError("Esperada tupla de 'Cor' em 'cores'.")
    return avaliar(checkpoint, tarefa, episodios, cores, semente, caminho_tracos)


def certifique(estado: EstadoAmbiente) -> bool:
    """Interface com o certificador de alcançabilidade."""
    if not isinstance(estado, EstadoAmbiente):
        raise TypeError("Esperado objeto do tipo 'EstadoAmbiente'.")
    return certificar_alcancavel(estado)


def despeje(estado: EstadoAmbiente) -> str:
    """Interface com o mapa em texto de um estado."""
    if not isinstance(estado, EstadoAmbiente):
        raise TypeError("Esperado objeto do tipo 'EstadoAmbiente'.")
    return despejar_layout(estado)


def formato_grade(estado: EstadoAmbiente) -> Tuple[int, int]:
    if not isinstance(estado, EstadoAmbiente):
        raise TypeError("Esperado objeto do tipo 'EstadoAmbiente'.")
    return estado.altura, estado.largura
