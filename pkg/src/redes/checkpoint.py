import struct
from pathlib import Path
from typing import Dict, Union

import numpy as np
import torch

from src.utils.erros import ErroCheckpoint

from .otimizacao import ArmazemParametros

MAGICO = b"RIDECKPT"
VERSAO = 1
PREFIXO_PARAMETRO = "param/"
PREFIXO_ACUMULADOR = "rmsprop/"


def salvar_tensores(tensores: Dict[str, np.ndarray], caminho: Union[str, Path]) -> None:
    """
    Grava tensores nomeados: cabeçalho (mágico, versão, tabela de nomes e formatos) seguido
    dos dados em float32 little-endian, na ordem da tabela.
    """
    cabecalho = bytearray(MAGICO)
    cabecalho += struct.pack("<II", VERSAO, len(tensores))
    for nome, array in tensores.items():
        nome_bytes = nome.encode("utf-8")
        cabecalho += struct.pack("<H", len(nome_bytes)) + nome_bytes
        cabecalho += struct.pack("<B", array.ndim)
        cabecalho += struct.pack(f"<{array.ndim}I", *array.shape)

    caminho = Path(caminho)
    caminho.parent.mkdir(parents=True, exist_ok=True)
    with open(caminho, "wb") as arquivo:
        arquivo.write(bytes(cabecalho))
        for array in tensores.values():
            arquivo.write(np.ascontiguousarray(array, dtype="<f4").tobytes())


def carregar_tensores(caminho: Union[str, Path]) -> Dict[str, np.ndarray]:
    try:
        dados = Path(caminho).read_bytes()
    except OSError as erro:
        raise ErroCheckpoint(f"Não foi possível ler o checkpoint '{caminho}': {erro}") from erro

    if dados[: len(MAGICO)] != MAGICO:
        raise ErroCheckpoint(f"'{caminho}' não é um checkpoint válido.")
    try:
        posicao = len(MAGICO)
        versao, quantidade = struct.unpack_from("<II", dados, posicao)
        posicao += 8
        if versao != VERSAO:
            raise ErroCheckpoint(f"Versão de checkpoint {versao} não suportada.")
        tabela = []
        for _ in range(quantidade):
            (tamanho_nome,) = struct.unpack_from("<H", dados, posicao)
            posicao += 2
            nome = dados[posicao : posicao + tamanho_nome].decode("utf-8")
            posicao += tamanho_nome
            (dimensoes,) = struct.unpack_from("<B", dados, posicao)
            posicao += 1
            formato = struct.unpack_from(f"<{dimensoes}I", dados, posicao)
            posicao += 4 * dimensoes
            tabela.append((nome, formato))

        tensores = {}
        for nome, formato in tabela:
            tamanho = int(np.prod(formato, dtype=np.int64))
            array = np.frombuffer(dados, dtype="<f4", count=tamanho, offset=posicao)
            tensores[nome] = array.reshape(formato).astype(np.float32)
            posicao += 4 * tamanho
    except (struct.error, ValueError) as erro:
        raise ErroCheckpoint(f"Checkpoint '{caminho}' truncado ou corrompido: {erro}") from erro
    return tensores


def salvar_checkpoint(armazem: ArmazemParametros, caminho: Union[str, Path]) -> None:
    """
    Salva os parâmetros e os acumuladores do RMSProp de um armazém.

    Parametros:
    - armazem: O armazém a salvar.
    - caminho: Arquivo de destino.
    """
    tensores = {
        PREFIXO_PARAMETRO + nome: parametro.detach().cpu().numpy() for nome, parametro in armazem.parametros()
    }
    if armazem.treinavel:
        for nome, acumulador in armazem.acumuladores().items():
            tensores[PREFIXO_ACUMULADOR + nome] = acumulador.cpu().numpy()
    salvar_tensores(tensores, caminho)


def carregar_checkpoint(armazem: ArmazemParametros, caminho: Union[str, Path]) -> ArmazemParametros:
    """
    Carrega um checkpoint em um armazém com a mesma arquitetura.

    Parametros:
    - armazem: Armazém de destino.
    - caminho: Arquivo do checkpoint.

    Retorna:
    - O armazém com os parâmetros carregados.
    """
    tensores = carregar_tensores(caminho)
    acumuladores = {}
    with torch.no_grad():
        for nome, parametro in armazem.parametros():
            chave = PREFIXO_PARAMETRO + nome
            if chave not in tensores:
                raise ErroCheckpoint(f"Parâmetro '{nome}' ausente em '{caminho}'.")
            if tuple(tensores[chave].shape) != tuple(parametro.shape):
                raise ErroCheckpoint(
                    f"Formato de '{nome}' incompatível: checkpoint {tensores[chave].shape}, rede {tuple(parametro.shape)}."
                )
            parametro.copy_(torch.from_numpy(tensores[chave]))
            if PREFIXO_ACUMULADOR + nome in tensores:
                acumuladores[nome] = torch.from_numpy(tensores[PREFIXO_ACUMULADOR + nome])
    armazem.definir_acumuladores(acumuladores)
    return armazem
