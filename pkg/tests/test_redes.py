import pytest
import torch
from torch import nn

from src.redes import (
    ArmazemParametros,
    ConfigOtimizacao,
    RedePolitica,
    TroncoConvolucional,
    carregar_checkpoint,
    carregar_tensores,
    lado_saida_convolucoes,
    passo_rmsprop,
    politica_adiante,
    salvar_checkpoint,
)
from src.utils.erros import ErroCheckpoint, ErroConfiguracao, ErroContrato, ErroNumerico


def observacoes_aleatorias(*formato, semente=0):
    gerador = torch.Generator().manual_seed(semente)
    return torch.randint(0, 9, (*formato, 7, 7, 3), generator=gerador, dtype=torch.uint8)


def test_dimensao_do_tronco():
    assert lado_saida_convolucoes(7) == 1
    assert TroncoConvolucional(7).dimensao_saida == 32
    assert TroncoConvolucional(9).dimensao_saida == 32 * 2 * 2


def test_pesos_nulos_dao_logits_uniformes():
    rede = RedePolitica()
    with torch.no_grad():
        for parametro in rede.parameters():
            parametro.zero_()
    logits, valores, _ = rede(observacoes_aleatorias(4), rede.estado_inicial(4))
    assert torch.all(logits == logits[:, :1])
    assert torch.all(valores == 0)


def test_formatos_de_saida():
    rede = RedePolitica()
    logits, valores, (h, c) = rede(observacoes_aleatorias(32), rede.estado_inicial(32))
    assert logits.shape == (32, 7)
    assert valores.shape == (32,)
    assert h.shape == c.shape == (32, 256)

    logits, valores, _ = rede(observacoes_aleatorias(5, 3), rede.estado_inicial(3))
    assert logits.shape == (5, 3, 7)
    assert valores.shape == (5, 3)


def test_formato_invalido():
    rede = RedePolitica()
    with pytest.raises(ErroContrato):
        rede(torch.zeros(2, 5, 5, 3), rede.estado_inicial(2))
    with pytest.raises(ErroContrato):
        rede(observacoes_aleatorias(2), rede.estado_inicial(3))


def test_inicio_de_episodio_zera_o_estado_recorrente():
    torch.manual_seed(0)
    rede = RedePolitica()
    observacoes = observacoes_aleatorias(4, 2)
    inicios = torch.zeros(4, 2, dtype=torch.bool)
    inicios[2] = True
    with torch.no_grad():
        logits, _, _ = rede(observacoes, rede.estado_inicial(2), inicios)
        isolado, _, _ = rede(observacoes[2], rede.estado_inicial(2))
        sem_reinicio, _, _ = rede(observacoes, rede.estado_inicial(2))
    assert torch.allclose(logits[2], isolado, atol=1e-6)
    assert not torch.allclose(sem_reinicio[2], isolado, atol=1e-6)



def test_passo_a_passo_igual_ao_desenrolar():
    torch.manual_seed(0)
    rede = RedePolitica()
    observacoes = observacoes_aleatorias(6, 3, semente=2)
    inicios = torch.zeros(6, 3, dtype=torch.bool)
    inicios[0] = True
    inicios[3, 1] = True
    inicios[4, 2] = True
    with torch.no_grad():
        logits_desenrolados, valores_desenrolados, estado_final = rede(observacoes, rede.estado_inicial(3), inicios)
        h, c = rede.estado_inicial(3)
        for t in range(6):
            mantem = (~inicios[t]).float().unsqueeze(1)
            logits, valores, (h, c) = politica_adiante(rede, observacoes[t], (h * mantem, c * mantem))
            assert torch.allclose(logits, logits_desenrolados[t], atol=1e-5)
            assert torch.allclose(valores, valores_desenrolados[t], atol=1e-5)
    assert torch.allclose(h, estado_final[0], atol=1e-5)
    assert torch.allclose(c, estado_final[1], atol=1e-5)

@pytest.mark.parametrize("semente", range(5))
def test_gradiente_do_tronco_confere_com_diferencas_finitas(semente):
    torch.manual_seed(semente)
    tronco = TroncoConvolucional().double()
    entrada = torch.rand(2, 7, 7, 3, dtype=torch.float64, requires_grad=True)
    assert torch.autograd.gradcheck(tronco, (entrada,), rtol=1e-3)


@pytest.mark.parametrize("semente", range(3))
def test_gradiente_da_politica_confere_com_diferencas_finitas(semente):
    torch.manual_seed(semente)
    rede = RedePolitica(unidades_lstm=16).double()
    entrada = torch.rand(3, 2, 7, 7, 3, dtype=torch.float64, requires_grad=True)
    inicios = torch.tensor([[True, True], [False, True], [False, False]])

    def saida(observacoes):
        logits, valores, _ = rede(observacoes, rede.estado_inicial(2), inicios)
        return torch.log_softmax(logits, dim=-1), valores

    assert torch.autograd.gradcheck(saida, (entrada,), rtol=1e-3)


def armazem_linear(config=None, **opcoes):
    modulo = nn.Linear(2, 1, bias=False)
    with torch.no_grad():
        modulo.weight.copy_(torch.tensor([[1.0, -2.0]]))
    return ArmazemParametros("linear", modulo, config or ConfigOtimizacao(passos_recozimento=10), **opcoes)


def test_gradientes_nulos_nao_mudam_parametros():
    armazem = armazem_linear()
    antes = armazem.modulo.weight.detach().clone()
    armazem.modulo.weight.grad = torch.zeros_like(antes)
    passo_rmsprop(armazem, ConfigOtimizacao(passos_recozimento=10), 0)
    assert torch.equal(armazem.modulo.weight, antes)


def test_taxa_recozida_a_zero_nao_muda_parametros():
    config = ConfigOtimizacao(passos_recozimento=10)
    armazem = armazem_linear(config)
    antes = armazem.modulo.weight.detach().clone()
    armazem.modulo.weight.grad = torch.ones_like(antes)
    passo_rmsprop(armazem, config, passo_global=10)
    assert config.taxa_efetiva(10) == 0.0
    assert torch.equal(armazem.modulo.weight, antes)


def test_atualizacao_muda_parametros_e_zera_gradientes():
    config = ConfigOtimizacao(passos_recozimento=10)
    armazem = armazem_linear(config)
    antes = armazem.modulo.weight.detach().clone()
    armazem.modulo.weight.grad = torch.ones_like(antes)
    passo_rmsprop(armazem, config, 0)
    assert not torch.equal(armazem.modulo.weight, antes)
    assert armazem.modulo.weight.grad is None


def test_corte_da_norma_global():
    config = ConfigOtimizacao(norma_maxima=40.0, passos_recozimento=10, alfa=0.99)
    armazem = armazem_linear(config)
    armazem.modulo.weight.grad = torch.tensor([[48.0, 64.0]])
    passo_rmsprop(armazem, config, 0)
    assert armazem.ultima_norma_gradiente == pytest.approx(80.0)
    # square_avg = (1 - alfa) * g², com g já multiplicado por 0.5
    acumulador = armazem.acumuladores()["weight"]
    assert torch.allclose(acumulador, torch.tensor([[5.76, 10.24]]), rtol=1e-5)


def test_gradiente_nao_finito():
    armazem = armazem_linear()
    armazem.modulo.weight.grad = torch.tensor([[float("nan"), 0.0]])
    with pytest.raises(ErroNumerico) as erro:
        passo_rmsprop(armazem, ConfigOtimizacao(passos_recozimento=10), 0)
    assert erro.value.nome_parametro == "linear.weight"


def test_armazem_fixo_nao_treina():
    armazem = armazem_linear(treinavel=False)
    assert not armazem.modulo.weight.requires_grad
    with pytest.raises(ErroConfiguracao):
        passo_rmsprop(armazem, ConfigOtimizacao(), 0)


@pytest.mark.parametrize("campo", ["taxa_aprendizado", "epsilon", "norma_maxima", "passos_recozimento"])
def test_config_otimizacao_invalida(campo):
    with pytest.raises(ErroConfiguracao):
        ConfigOtimizacao(**{campo: 0})


def test_checkpoint_preserva_saidas_e_acumuladores(tmp_path):
    config = ConfigOtimizacao(passos_recozimento=10)
    torch.manual_seed(0)
    origem = ArmazemParametros("politica", RedePolitica(), config)
    origem.modulo.cabeca_valor.weight.grad = torch.ones_like(origem.modulo.cabeca_valor.weight)
    passo_rmsprop(origem, config, 0)
    salvar_checkpoint(origem, tmp_path / "politica.ckpt")

    torch.manual_seed(1)
    destino = ArmazemParametros("politica", RedePolitica(), config)
    carregar_checkpoint(destino, tmp_path / "politica.ckpt")

    sonda = observacoes_aleatorias(3)
    with torch.no_grad():
        esperado = origem.modulo(sonda, origem.modulo.estado_inicial(3))
        obtido = destino.modulo(sonda, destino.modulo.estado_inicial(3))
    assert torch.equal(esperado[0], obtido[0])
    assert torch.equal(esperado[1], obtido[1])
    assert torch.equal(
        origem.acumuladores()["cabeca_valor.weight"], destino.acumuladores()["cabeca_valor.weight"]
    )


def test_checkpoint_com_formato_incompativel(tmp_path):
    config = ConfigOtimizacao()
    salvar_checkpoint(ArmazemParametros("linear", nn.Linear(2, 1), config), tmp_path / "linear.ckpt")
    with pytest.raises(ErroCheckpoint):
        carregar_checkpoint(ArmazemParametros("linear", nn.Linear(3, 1), config), tmp_path / "linear.ckpt")


def test_checkpoint_corrompido(tmp_path):
    caminho = tmp_path / "lixo.ckpt"
    caminho.write_bytes(b"nao e um checkpoint")
    with pytest.raises(ErroCheckpoint):
        carregar_tensores(caminho)
    with pytest.raises(ErroCheckpoint):
        carregar_tensores(tmp_path / "inexistente.ckpt")
