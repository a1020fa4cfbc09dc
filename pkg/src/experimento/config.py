import typing
from dataclasses import asdict, dataclass, fields, replace
from pathlib import Path
from typing import Dict, List, Optional, Union

from src.agente import PesosPerda
from src.ambiente import EspecificacaoTarefa, tarefa_de_nome
from src.intrinseca import ConfigRecompensa, Metodo, config_recompensa_padrao
from src.redes import ConfigOtimizacao
from src.utils import Constantes, diretorio_resultados
from src.utils.erros import ErroConfiguracao

VALOR_NULO = "none"


@dataclass(frozen=True)
class ConfigExperimento:
    """
    Configuração plana de um treino. Os coeficientes de recompensa nulos usam os valores
    ajustados por método e tarefa.

    Atributos:
    - tarefa / metodo: Nomes da tarefa e do método, como na linha de comando.
    - omega_ir / coef_entropia: Sobrescrevem os coeficientes padrão quando definidos.
    - taxa_aprendizado, momento, epsilon, alfa, norma_maxima: RMSProp.
    - omega_pi, omega_fw, omega_inv: Pesos do objetivo conjunto.
    - gama, rho_barra, c_barra: Desconto e cortes do V-trace.
    - comprimento_desenrolar / tamanho_lote: T e B de cada passo do aprendiz.
    - total_frames: Orçamento de passos de ambiente somados entre todos os atores.
    - num_atores / tamanho_fila: Atores concorrentes e capacidade da fila até o aprendiz.
    - semente: Semente do experimento.
    - singleton: Semente fixa do layout; todo episódio usa o mesmo ambiente.
    - sem_extrinseca: Treina sem recompensa extrínseca, com episódios de 200 passos.
    - sincrono: Atores e aprendiz na mesma thread, de forma determinística.
    - tamanho_visao / limite_passos: Visão do agente e limite de passos da tarefa.
    - frames_entre_checkpoints: Intervalo dos checkpoints periódicos.
    - registrar_tracos: Grava um registro por passo de ambiente em 'tracos.csv'.
    - episodios_avaliacao: Episódios da avaliação.
    """
    tarefa: str = "multiroom-n7-s4"
    metodo: str = "ride"
    omega_ir: Optional[float] = None
    coef_entropia: Optional[float] = None
    taxa_aprendizado: float = 0.0001
    momento: float = 0.0
    epsilon: float = 0.01
    alfa: float = 0.99
    norma_maxima: float = 40.0
    omega_pi: float = 1.0
    omega_fw: float = 10.0
    omega_inv: float = 0.1
    gama: float = 0.99
    rho_barra: float = 1.0
    c_barra: float = 1.0
    comprimento_desenrolar: int = 100
    tamanho_lote: int = 32
    total_frames: int = 2_000_000
    num_atores: int = 1
    tamanho_fila: int = 4
    semente: int = 0
    singleton: Optional[int] = None
    sem_extrinseca: bool = False
    sincrono: bool = False
    tamanho_visao: int = Constantes.TAMANHO_VISAO
    limite_passos: Optional[int] = None
    frames_entre_checkpoints: int = 500_000
    registrar_tracos: bool = False
    episodios_avaliacao: int = 100

    def validar(self) -> None:
        """Levanta ErroConfiguracao para qualquer valor inválido, inclusive nos subconfigs derivados."""
        positivos = dict(
            comprimento_desenrolar=self.comprimento_desenrolar,
            tamanho_lote=self.tamanho_lote,
            total_frames=self.total_frames,
            num_atores=self.num_atores,
            tamanho_fila=self.tamanho_fila,
            frames_entre_checkpoints=self.frames_entre_checkpoints,
            episodios_avaliacao=self.episodios_avaliacao,
        )
        for nome, valor in positivos.items():
            if valor <= 0:
                raise ErroConfiguracao(f"'{nome}' deve ser positivo, recebido {valor}.")
        if self.tamanho_lote % self.num_atores != 0:
            raise ErroConfiguracao("O tamanho do lote deve ser múltiplo do número de atores.")
        if not 0 < self.gama <= 1:
            raise ErroConfiguracao("O desconto deve estar em (0, 1].")
        self.especificacao_tarefa()
        self.config_recompensa()
        self.config_otimizacao()
        self.pesos_perda()

    @property
    def metodo_enum(self) -> Metodo:
        try:
            return Metodo(self.metodo)
        except ValueError:
            validos = ", ".join(m.value for m in Metodo)
            raise ErroConfiguracao(f"Método desconhecido '{self.metodo}'. Válidos: {validos}.") from None

    @property
    def ambientes_por_ator(self) -> int:
        return self.tamanho_lote // self.num_atores

    def especificacao_tarefa(self) -> EspecificacaoTarefa:
        limite = self.limite_passos
        if limite is None and self.sem_extrinseca:
            limite = Constantes.PASSOS_SEM_EXTRINSECA
        return tarefa_de_nome(self.tarefa, self.singleton, self.tamanho_visao, limite)

    def config_recompensa(self) -> ConfigRecompensa:
        padrao = config_recompensa_padrao(self.metodo_enum, self.especificacao_tarefa())
        return replace(
            padrao,
            omega_ir=padrao.omega_ir if self.omega_ir is None else self.omega_ir,
            coef_entropia=padrao.coef_entropia if self.coef_entropia is None else self.coef_entropia,
        )

    def config_otimizacao(self) -> ConfigOtimizacao:
        atualizacoes = max(1, self.total_frames // (self.comprimento_desenrolar * self.tamanho_lote))
        return ConfigOtimizacao(
            taxa_aprendizado=self.taxa_aprendizado,
            momento=self.momento,
            epsilon=self.epsilon,
            norma_maxima=self.norma_maxima,
            passos_recozimento=atualizacoes,
            alfa=self.alfa,
        )

    def pesos_perda(self) -> PesosPerda:
        return PesosPerda(self.omega_pi, self.omega_fw, self.omega_inv)

    def diferencas(self, outra: "ConfigExperimento") -> List[str]:
        """Lista legível dos campos que diferem entre duas configurações."""
        return [
            f"{campo.name}: {getattr(self, campo.name)!r} != {getattr(outra, campo.name)!r}"
            for campo in fields(self)
            if getattr(self, campo.name) != getattr(outra, campo.name)
        ]


def diretorio_execucao(config: ConfigExperimento) -> Path:
    """<RIDE_LOG_DIR>/<tarefa>/<metodo>/seed<k>/"""
    return diretorio_resultados() / config.tarefa / config.metodo / f"seed{config.semente}"


def _formatar(valor) -> str:
    if valor is None:
        return VALOR_NULO
    if isinstance(valor, float):
        return repr(valor)
    return str(valor)


def _converter(tipo, texto: str, chave: str):
    if typing.get_origin(tipo) is Union:
        if texto.lower() == VALOR_NULO:
            return None
        tipo = next(argumento for argumento in typing.get_args(tipo) if argumento is not type(None))
    try:
        if tipo is bool:
            if texto.lower() not in ("true", "false"):
                raise ValueError(texto)
            return texto.lower() == "true"
        return tipo(texto)
    except ValueError:
        raise ErroConfiguracao(f"Valor inválido para '{chave}': '{texto}'.") from None


_TIPOS_CAMPOS = typing.get_type_hints(ConfigExperimento)


def config_de_dict(valores: Dict[str, str], base: Optional[ConfigExperimento] = None) -> ConfigExperimento:
    """
    Constrói uma configuração a partir de pares chave/valor em texto.

    Parametros:
    - valores: Chaves exatamente iguais aos campos de ConfigExperimento.
    - base: Configuração cujos campos não informados são mantidos.

    Retorna:
    - A nova configuração. Chaves desconhecidas levantam ErroConfiguracao.
    """
    desconhecidas = set(valores) - set(_TIPOS_CAMPOS)
    if desconhecidas:
        raise ErroConfiguracao(f"Chaves desconhecidas na configuração: {sorted(desconhecidas)}.")
    convertidos = {chave: _converter(_TIPOS_CAMPOS[chave], texto, chave) for chave, texto in valores.items()}
    return replace(base or ConfigExperimento(), **convertidos)


def salvar_config(config: ConfigExperimento, caminho: Union[str, Path]) -> None:
    caminho = Path(caminho)
    caminho.parent.mkdir(parents=True, exist_ok=True)
    linhas = [f"{chave}={_formatar(valor)}" for chave, valor in asdict(config).items()]
    caminho.write_text("\n".join(linhas) + "\n", encoding="utf-8")


def ler_config(caminho: Union[str, Path], base: Optional[ConfigExperimento] = None) -> ConfigExperimento:
    """
    Lê um arquivo 'chave=valor', uma chave por linha; linhas vazias e iniciadas por '#' são ignoradas.

    Parametros:
    - caminho: Arquivo de configuração.
    - base: Configuração cujos campos ausentes do arquivo são mantidos.

    Retorna:
    - A configuração lida.
    """
    valores = {}
    for numero, linha in enumerate(Path(caminho).read_text(encoding="utf-8").splitlines(), start=1):
        linha = linha.strip()
        if not linha or linha.startswith("#"):
            continue
        if "=" not in linha:
            raise ErroConfiguracao(f"Linha {numero} de '{caminho}' não está no formato chave=valor.")
        chave, valor = linha.split("=", 1)
        valores[chave.strip()] = valor.strip()
    return config_de_dict(valores, base)
