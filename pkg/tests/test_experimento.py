from dataclasses import replace

import pandas as pd
import pytest

from src.agente import ConjuntoParametros, EpisodioConcluido, NOMES_ARMAZENS
from src.ambiente import CORES_TESTE, tarefa_de_nome
from src.experimento import (
    ConfigExperimento,
    EstadoTreino,
    RegistroTreino,
    avaliar,
    carregar_estado_treino,
    config_de_dict,
    diretorio_execucao,
    ler_config,
    ler_registro,
    salvar_config,
    salvar_estado_treino,
)
from src.intrinseca import ler_tracos
from src.main import executar_treino
from src.redes import ConfigOtimizacao
import src.main
from src.utils.erros import ErroCheckpoint, ErroConfiguracao, ErroNumerico

CONFIG_MINIMA = ConfigExperimento(
    tarefa="multiroom-n2-s4",
    comprimento_desenrolar=5,
    tamanho_lote=2,
    total_frames=40,
    sincrono=True,
    frames_entre_checkpoints=20,
)


def test_config_salva_e_lida(tmp_path):
    config = replace(CONFIG_MINIMA, omega_ir=0.25, singleton=3, sem_extrinseca=True)
    salvar_config(config, tmp_path / "config.txt")
    assert ler_config(tmp_path / "config.txt") == config


def test_config_ignora_comentarios_e_linhas_vazias(tmp_path):
    caminho = tmp_path / "config.txt"
    caminho.write_text("# experimento\n\ntarefa = keycorridor-s3-r3\nmetodo=icm\n", encoding="utf-8")
    config = ler_config(caminho)
    assert config.tarefa == "keycorridor-s3-r3"
    assert config.metodo == "icm"
    assert config.tamanho_lote == ConfigExperimento().tamanho_lote


def test_config_chave_desconhecida():
    with pytest.raises(ErroConfiguracao):
        config_de_dict({"tamanho_do_lote": "8"})


def test_config_converte_tipos():
    config = config_de_dict({"sincrono": "True", "omega_ir": "none", "singleton": "7", "taxa_aprendizado": "1e-3"})
    assert config.sincrono is True
    assert config.omega_ir is None
    assert config.singleton == 7
    assert config.taxa_aprendizado == pytest.approx(0.001)
    with pytest.raises(ErroConfiguracao):
        config_de_dict({"sincrono": "talvez"})
    with pytest.raises(ErroConfiguracao):
        config_de_dict({"tamanho_lote": "oito"})


@pytest.mark.parametrize(
    "alteracoes",
    [
        dict(tamanho_lote=0),
        dict(tamanho_lote=3, num_atores=2),
        dict(gama=1.5),
        dict(metodo="curiosidade"),
        dict(tarefa="labirinto"),
        dict(omega_ir=-1.0),
        dict(taxa_aprendizado=0.0),
        dict(omega_fw=-1.0),
    ],
)
def test_config_invalida(alteracoes):
    with pytest.raises(ErroConfiguracao):
        replace(CONFIG_MINIMA, **alteracoes).validar()


def test_coeficientes_padrao_e_sobrescritos():
    assert CONFIG_MINIMA.config_recompensa().omega_ir == 0.1
    assert replace(CONFIG_MINIMA, omega_ir=0.3).config_recompensa().omega_ir == 0.3
    assert replace(CONFIG_MINIMA, tarefa="multiroom-n10-s10").config_recompensa().omega_ir == 0.5


def test_sem_extrinseca_limita_episodios_a_200_passos():
    assert replace(CONFIG_MINIMA, sem_extrinseca=True).especificacao_tarefa().max_passos == 200
    assert CONFIG_MINIMA.especificacao_tarefa().max_passos == 40


def test_recozimento_pelo_numero_de_atualizacoes():
    assert CONFIG_MINIMA.config_otimizacao().passos_recozimento == 4


def test_diretorio_de_execucao(tmp_path):
    assert diretorio_execucao(CONFIG_MINIMA) == tmp_path / "resultados" / "multiroom-n2-s4" / "ride" / "seed0"


def test_estado_de_treino_salvo_e_restaurado(tmp_path):
    config = ConfigOtimizacao(passos_recozimento=10)
    origem = ConjuntoParametros(config, semente=1)
    origem.passo_global = 12
    tabela = {2 ** 64 - 1: 3, 17: 1}
    salvar_estado_treino(tmp_path, origem, EstadoTreino(frames=1200, episodios=9, passo_global=12), tabela)

    destino = ConjuntoParametros(config, semente=2)
    restaurada = {}
    estado = carregar_estado_treino(tmp_path, destino, restaurada)
    assert estado == EstadoTreino(frames=1200, episodios=9, passo_global=12)
    assert destino.passo_global == 12
    assert restaurada == tabela
    for nome in NOMES_ARMAZENS:
        esperado, obtido = origem.instantaneo()[nome], destino.instantaneo()[nome]
        assert all((esperado[chave] == obtido[chave]).all() for chave in esperado)


def test_estado_sem_checkpoint(tmp_path):
    with pytest.raises(ErroCheckpoint):
        carregar_estado_treino(tmp_path, ConjuntoParametros(ConfigOtimizacao()), {})


def episodio(retorno):
    return EpisodioConcluido(retorno=retorno, passos=10, media_r_i=0.1, sala_maxima=1)


def test_registro_de_treino_restaurado(tmp_path):
    registro = RegistroTreino(tmp_path / "runlog.csv", janela=2)
    registro.adicionar(10, [episodio(1.0)])
    registro.adicionar(20, [episodio(0.0), episodio(0.5)])
    registro.adicionar(30, [episodio(0.2)])
    assert registro.media_movel == pytest.approx(0.35)

    restaurado = RegistroTreino(tmp_path / "runlog.csv", janela=2)
    restaurado.restaurar(20)
    assert restaurado.episodios == 3
    assert restaurado.media_movel == pytest.approx(0.25)
    assert ler_registro(tmp_path / "runlog.csv")["frames"].tolist() == [10, 20, 20]


def test_treino_gera_os_arquivos_da_execucao(tmp_path):
    resultado = executar_treino(replace(CONFIG_MINIMA, registrar_tracos=True), tmp_path, mostrar_progresso=False)
    assert resultado.frames == 40
    assert (tmp_path / "config.txt").exists()
    assert len(pd.read_csv(tmp_path / "diagnosticos.csv")) == 4
    assert len(ler_tracos(tmp_path / "tracos.csv")) == 40
    for nome in NOMES_ARMAZENS:
        assert (tmp_path / "checkpoints" / f"{nome}.ckpt").exists()
    assert (tmp_path / "checkpoints" / "contagens.npz").exists()
    assert ler_config(tmp_path / "config.txt") == replace(CONFIG_MINIMA, registrar_tracos=True)


def test_treino_sincrono_deterministico(tmp_path):
    for nome in ("a", "b"):
        executar_treino(CONFIG_MINIMA, tmp_path / nome, mostrar_progresso=False)
    diagnosticos_a = pd.read_csv(tmp_path / "a" / "diagnosticos.csv")
    diagnosticos_b = pd.read_csv(tmp_path / "b" / "diagnosticos.csv")
    pd.testing.assert_frame_equal(diagnosticos_a, diagnosticos_b)
    for nome in NOMES_ARMAZENS:
        arquivo = f"checkpoints/{nome}.ckpt"
        assert (tmp_path / "a" / arquivo).read_bytes() == (tmp_path / "b" / arquivo).read_bytes()


def test_retomada_com_configuracao_diferente(tmp_path):
    executar_treino(CONFIG_MINIMA, tmp_path, mostrar_progresso=False)
    with pytest.raises(ErroConfiguracao):
        executar_treino(replace(CONFIG_MINIMA, omega_ir=0.9), tmp_path, retomar=True, mostrar_progresso=False)


def test_retomada_de_treino_concluido(tmp_path):
    executar_treino(CONFIG_MINIMA, tmp_path, mostrar_progresso=False)
    resultado = executar_treino(CONFIG_MINIMA, tmp_path, retomar=True, mostrar_progresso=False)
    assert resultado.frames == 40
    assert len(pd.read_csv(tmp_path / "diagnosticos.csv")) == 4


def test_avaliacao_da_politica_uniforme(tmp_path):
    tarefa = tarefa_de_nome("multiroom-n2-s4")
    media, desvio = avaliar(None, tarefa, 1, caminho_tracos=tmp_path / "tracos.csv")
    assert desvio == 0.0
    assert 0.0 <= media <= 1.0
    assert len(ler_tracos(tmp_path / "tracos.csv")) > 0

    media, desvio = avaliar(None, tarefa, 3, cores=CORES_TESTE)
    assert 0.0 <= media <= 1.0
    assert desvio >= 0.0


def test_avaliacao_de_checkpoint_treinado(tmp_path):
    executar_treino(CONFIG_MINIMA, tmp_path, mostrar_progresso=False)
    media, _ = avaliar(tmp_path / "checkpoints", tarefa_de_nome("multiroom-n2-s4"), 2)
    assert 0.0 <= media <= 1.0


def test_avaliacao_sem_episodios():
    with pytest.raises(ErroConfiguracao):
        avaliar(None, tarefa_de_nome("multiroom-n2-s4"), 0)


def test_perda_nao_finita_grava_diagnosticos(tmp_path, monkeypatch, caplog):
    def passo_divergente(lote, parametros, *argumentos):
        raise ErroNumerico(
            "Perda não finita no passo do aprendiz.",
            diagnosticos={"perda_rl": float("nan"), "perda_direta": 0.5},
        )

    monkeypatch.setattr(src.main, "passo_aprendiz", passo_divergente)
    with pytest.raises(ErroNumerico):
        executar_treino(CONFIG_MINIMA, tmp_path, mostrar_progresso=False)

    falha = pd.read_csv(tmp_path / "falha_numerica.csv")
    assert len(falha) == 1
    assert falha.loc[0, "frames"] == 10
    assert falha.loc[0, "passo_global"] == 0
    assert pd.isna(falha.loc[0, "perda_rl"])
    assert falha.loc[0, "perda_direta"] == 0.5
    assert "falha_numerica.csv" in caplog.text
