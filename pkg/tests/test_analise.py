import logging
import math

import numpy as np
import pandas as pd
import pytest
from PIL import Image

import explorador
from src.ambiente import Acao, Interacao, reiniciar, tarefa_de_nome
from src.analise import (
    GRUPO_OUTRAS,
    GRUPOS_MULTISALA,
    GRUPOS_OBJETOS,
    TabelaRecompensaStreaming,
    agrupamento_de_nome,
    curva_decaimento_recompensa,
    estados_distintos_por_episodio,
    indice_sala_por_episodio,
    mapa_recompensa_intrinseca,
    mapa_visitas,
    plotar_curvas_aprendizado,
    rotular_grupos,
    salvar_mapa,
    tabela_recompensa_por_acao,
)
from src.experimento import ConfigExperimento
from src.intrinseca import EscritorTracos, RegistroTraco
from src.interface import avalie, certifique, despeje, treine, varra
from src.utils.erros import ErroConfiguracao, ErroContrato


def linha_tabela(tabela, grupo):
    return tabela.set_index("grupo").loc[grupo]


def test_grupos_por_prioridade(criar_tracos):
    tracos = criar_tracos(
        [
            dict(acao=Acao.ALTERNAR, interacao=Interacao.ABRIR_PORTA),
            dict(acao=Acao.VIRAR_ESQUERDA),
            dict(acao=Acao.VIRAR_DIREITA),
            dict(acao=Acao.FRENTE),
            dict(acao=Acao.PEGAR),
        ]
    )
    assert rotular_grupos(tracos, GRUPOS_MULTISALA).tolist() == ["abrir_porta", "virar", "virar", "frente", GRUPO_OUTRAS]


def test_agrupamento_desconhecido():
    assert agrupamento_de_nome("objetos") is GRUPOS_OBJETOS
    with pytest.raises(ErroConfiguracao):
        agrupamento_de_nome("portas")


def test_tabela_com_recompensa_constante(criar_tracos):
    tracos = criar_tracos([dict(acao=acao, r_i=0.3) for acao in (0, 1, 2, 2, 3, 5)])
    tabela = tabela_recompensa_por_acao(tracos, GRUPOS_MULTISALA)
    assert tabela["grupo"].tolist() == ["abrir_porta", "virar", "frente", GRUPO_OUTRAS]
    presentes = tabela[tabela["passos"] > 0]
    assert np.allclose(presentes["media"], 0.3)
    assert np.allclose(presentes["desvio"], 0.0)
    assert tabela["passos"].sum() == 6


def test_tabela_com_um_passo_e_grupos_ausentes(criar_tracos):
    tracos = criar_tracos([dict(acao=Acao.FRENTE, r_i=5.0)])
    tabela = tabela_recompensa_por_acao(tracos, GRUPOS_MULTISALA)
    frente = linha_tabela(tabela, "frente")
    assert (frente["media"], frente["desvio"], frente["passos"]) == (5.0, 0.0, 1)
    porta = linha_tabela(tabela, "abrir_porta")
    assert math.isnan(porta["media"])
    assert porta["passos"] == 0


def test_tabela_de_tracos_vazios(criar_tracos):
    with pytest.raises(ErroContrato):
        tabela_recompensa_por_acao(criar_tracos([]), GRUPOS_MULTISALA)


def test_tabela_em_fluxo_igual_a_tabela_completa(criar_tracos):
    gerador = np.random.default_rng(0)
    linhas = [
        dict(
            episodio=i // 50,
            passo=i % 50 + 1,
            acao=int(gerador.integers(0, 7)),
            interacao=int(gerador.choice([0, 0, 0, 1, 2, 3, 4])),
            r_i=float(gerador.random()),
        )
        for i in range(500)
    ]
    tracos = criar_tracos(linhas)
    registros = [RegistroTraco(**linha) for linha in tracos.to_dict("records")]
    for agrupamento in (GRUPOS_MULTISALA, GRUPOS_OBJETOS):
        completa = tabela_recompensa_por_acao(tracos, agrupamento)
        fluxo = TabelaRecompensaStreaming(agrupamento).adicionar_varios(registros).tabela()
        pd.testing.assert_frame_equal(fluxo, completa, check_exact=True)


def test_tabela_em_fluxo_identica_com_valores_grandes(criar_tracos):
    gerador = np.random.default_rng(3)
    valores = 1000.0 + gerador.normal(0.0, 1e-3, size=2000)
    tracos = criar_tracos([dict(passo=k + 1, acao=Acao.FRENTE, r_i=float(v)) for k, v in enumerate(valores)])
    registros = [RegistroTraco(**linha) for linha in tracos.to_dict("records")]
    # Ordem de chegada diferente da ordem das linhas
    registros.reverse()
    completa = tabela_recompensa_por_acao(tracos, GRUPOS_MULTISALA)
    fluxo = TabelaRecompensaStreaming(GRUPOS_MULTISALA).adicionar_varios(registros).tabela()
    frente = linha_tabela(fluxo, "frente")
    assert frente["media"] == linha_tabela(completa, "frente")["media"]
    assert frente["desvio"] == linha_tabela(completa, "frente")["desvio"]
    assert frente["desvio"] == pytest.approx(1e-3, rel=0.1)


def test_mapa_de_visitas_parado(criar_tracos):
    tracos = criar_tracos([dict(passo=k, x=2, y=3, acao=Acao.VIRAR_ESQUERDA) for k in range(1, 11)])
    mapa = mapa_visitas(tracos, (5, 5))
    assert mapa[3, 2] == 10
    assert mapa.sum() == 10
    assert np.count_nonzero(mapa) == 1


def test_mapa_de_visitas_soma_os_passos(criar_tracos):
    tracos = criar_tracos([dict(x=x, y=y) for x in range(4) for y in range(3)] * 2)
    mapa = mapa_visitas(tracos)
    assert mapa.shape == (3, 4)
    assert mapa.sum() == len(tracos)
    assert np.all(mapa == 2)


def test_mapa_de_passeio_aleatorio_uniforme():
    # Passeio preguiçoso: movimento bloqueado pela borda mantém a posição, e a distribuição estacionária é uniforme
    gerador = np.random.default_rng(0)
    caminhantes, lado = 20_000, 5
    x = gerador.integers(0, lado, caminhantes)
    y = gerador.integers(0, lado, caminhantes)
    deslocamentos = np.array([(1, 0), (0, 1), (-1, 0), (0, -1)])
    for _ in range(200):
        dx, dy = deslocamentos[gerador.integers(0, 4, caminhantes)].T
        x = np.clip(x + dx, 0, lado - 1)
        y = np.clip(y + dy, 0, lado - 1)
    mapa = mapa_visitas(pd.DataFrame({"x": x, "y": y}), (lado, lado))
    esperado = caminhantes / lado ** 2
    desvio = np.sqrt(caminhantes * (1 / lado ** 2) * (1 - 1 / lado ** 2))
    assert mapa.sum() == caminhantes
    # 4 desvios para as 25 células juntas
    assert np.all(np.abs(mapa - esperado) < 4 * desvio)


def test_mapa_com_posicao_fora_da_grade(criar_tracos):
    with pytest.raises(ErroContrato):
        mapa_visitas(criar_tracos([dict(x=7, y=1)]), (5, 5))


def test_mapa_de_recompensa_so_na_porta(criar_tracos):
    tracos = criar_tracos(
        [
            dict(x=1, y=1, acao=Acao.FRENTE, r_i=0.0),
            dict(x=2, y=1, acao=Acao.ALTERNAR, interacao=Interacao.ABRIR_PORTA, r_i=1.0),
            dict(x=3, y=1, acao=Acao.FRENTE, r_i=0.0),
        ]
    )
    mapas = mapa_recompensa_intrinseca(tracos, GRUPOS_MULTISALA, (3, 5))
    assert set(mapas) == {"abrir_porta", "virar", "frente", GRUPO_OUTRAS}
    porta = mapas["abrir_porta"]
    assert porta[1, 2] == 1.0
    assert np.isnan(porta).sum() == porta.size - 1
    assert np.nansum(mapas["frente"]) == 0.0
    assert np.all(np.isnan(mapas["virar"]))


def test_mapa_de_recompensa_constante(criar_tracos):
    gerador = np.random.default_rng(1)
    tracos = criar_tracos(
        [dict(x=int(gerador.integers(0, 6)), y=int(gerador.integers(0, 6)), acao=int(gerador.integers(0, 7)), r_i=0.7)
         for _ in range(200)]
    )
    for mapa in mapa_recompensa_intrinseca(tracos, GRUPOS_MULTISALA, (6, 6)).values():
        visitadas = mapa[~np.isnan(mapa)]
        assert np.allclose(visitadas, 0.7)


def test_estados_distintos(criar_tracos):
    alternando = [dict(episodio=0, passo=k, hash_obs=k % 2) for k in range(1, 21)]
    quatro = [dict(episodio=1, passo=k, hash_obs=2 ** 63 + k % 4) for k in range(1, 9)]
    serie = estados_distintos_por_episodio(criar_tracos(alternando + quatro), janela=2)
    assert serie["distintos"].tolist() == [2, 4]
    assert serie["media_movel"].tolist() == [2.0, 3.0]


def test_indice_de_sala(criar_tracos):
    tracos = criar_tracos(
        [dict(episodio=0, sala=0), dict(episodio=0, sala=1), dict(episodio=1, sala=3), dict(episodio=2, sala=2)]
    )
    serie, mediana = indice_sala_por_episodio(tracos)
    assert serie["sala_maxima"].tolist() == [1, 3, 2]
    assert mediana == 2.0


def registro_treino(valores_r_i):
    return pd.DataFrame(
        {
            "frames": [1000 * (k + 1) for k in range(len(valores_r_i))],
            "media_recompensa_intrinseca": valores_r_i,
        }
    )


def test_decaimento_constante_e_plano():
    curva = curva_decaimento_recompensa({"ride": registro_treino([0.4] * 30)}, janela=10)["ride"]
    assert np.allclose(curva["media_r_i"], 0.4)
    assert curva["frames"].tolist()[:2] == [1000, 2000]


def test_decaimento_com_janela_um_e_identidade():
    valores = [0.9, 0.5, 0.7, 0.1]
    curva = curva_decaimento_recompensa({"icm": registro_treino(valores)}, janela=1)["icm"]
    assert np.allclose(curva["media_r_i"], valores)


def test_decaimento_de_registro_vazio(caplog):
    vazio = pd.DataFrame(columns=["frames", "media_recompensa_intrinseca"])
    with caplog.at_level(logging.WARNING):
        curvas = curva_decaimento_recompensa({"rnd": vazio, "ride": registro_treino([0.2])})
    assert curvas["rnd"].empty
    assert len(curvas["ride"]) == 1
    assert "rnd" in caplog.text


def test_salvar_mapa(tmp_path):
    mapa = np.arange(25, dtype=float).reshape(5, 5)
    mapa[0, 0] = np.nan
    caminho_csv, caminho_pgm = salvar_mapa(mapa, tmp_path, "visitas")
    relido = pd.read_csv(caminho_csv, header=None).to_numpy()
    assert relido.shape == (5, 5)
    assert relido[4, 4] == 24.0
    with Image.open(caminho_pgm) as imagem:
        assert imagem.size == (500, 500)
        assert imagem.getpixel((499, 499)) == 255


def test_curvas_de_aprendizado(tmp_path):
    registro = pd.DataFrame({"frames": [10, 20], "media_movel_retorno": [0.0, 0.5]})
    plotar_curvas_aprendizado({"ride": registro}, tmp_path / "curvas.png")
    assert (tmp_path / "curvas.png").stat().st_size > 0


def test_interface_confere_tipos():
    with pytest.raises(TypeError):
        treine({"tarefa": "multiroom-n2-s4"})
    with pytest.raises(TypeError):
        varra(ConfigExperimento(), "5")
    with pytest.raises(TypeError):
        avalie(None, "multiroom-n2-s4", 3)
    with pytest.raises(TypeError):
        avalie(None, tarefa_de_nome("multiroom-n2-s4"), 2.5)
    with pytest.raises(TypeError):
        certifique(None)


def test_interface_despeja_layout():
    estado, _ = reiniciar(tarefa_de_nome("multiroom-n2-s4"), 0)
    assert certifique(estado)
    linhas = despeje(estado).splitlines()
    assert all(len(linha) == estado.largura for linha in linhas[: estado.altura])
    assert "legenda" in linhas[estado.altura]


def test_linha_de_comando_layout(capsys):
    assert explorador.executar(["layout", "--task", "multiroom-n2-s4", "--seed", "3"]) == 0
    assert capsys.readouterr().out.strip()


def test_linha_de_comando_tarefa_invalida():
    assert explorador.executar(["layout", "--task", "labirinto-n2"]) == 1


def test_linha_de_comando_analisa_tabela_e_mapa(tmp_path):
    caminho = tmp_path / "tracos.csv"
    EscritorTracos(caminho).escrever(
        [
            RegistroTraco(episodio=0, passo=k, x=1 + k % 3, y=1, direcao=0, acao=k % 3, interacao=0, sala=0,
                          r_i=0.1 * k, r_e=0.0, hash_obs=k)
            for k in range(1, 10)
        ]
    )
    saida = tmp_path / "saida"
    assert explorador.executar(["analyze", "table", "--traces", str(caminho), "--out", str(saida)]) == 0
    tabela = pd.read_csv(saida / "tabela_acoes.csv")
    assert tabela["passos"].sum() == 9
    argumentos = ["analyze", "visitmap", "--traces", str(caminho), "--out", str(saida), "--task", "multiroom-n2-s4"]
    assert explorador.executar(argumentos) == 0
    assert (saida / "visitas.csv").exists()
    assert (saida / "visitas.pgm").exists()
