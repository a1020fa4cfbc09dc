import math

import pytest
import torch

from src.dinamica import (
    ModeloDireto,
    ModeloInverso,
    RedeEmbedding,
    embutir,
    erro_quadratico,
    perda_direta,
    perda_inversa,
)


def observacoes(*formato, semente=0):
    gerador = torch.Generator().manual_seed(semente)
    return torch.randint(0, 9, (*formato, 7, 7, 3), generator=gerador, dtype=torch.uint8)


def test_dimensao_do_embedding():
    rede = RedeEmbedding()
    assert rede.dimensao == 32
    assert embutir(rede, observacoes(1)[0]).shape == (32,)
    assert embutir(rede, observacoes(4, 3)).shape == (4, 3, 32)


def test_observacoes_iguais_embeddings_iguais():
    rede = RedeEmbedding()
    obs = observacoes(1)[0]
    assert torch.equal(embutir(rede, obs), embutir(rede, obs.clone()))


def test_embedding_com_pesos_nulos():
    rede = RedeEmbedding()
    with torch.no_grad():
        for parametro in rede.parameters():
            parametro.zero_()
    assert torch.all(embutir(rede, observacoes(5)) == 0)


def test_erro_quadratico():
    phi = torch.randn(32)
    assert erro_quadratico(phi, phi) == 0
    assert erro_quadratico(phi + 1, phi).item() == pytest.approx(32.0)


def test_perda_inversa_uniforme_e_ln7():
    modelo = ModeloInverso(32)
    with torch.no_grad():
        for parametro in modelo.parameters():
            parametro.zero_()
    phi = torch.randn(4, 32)
    perdas = perda_inversa(modelo, phi, torch.randn(4, 32), torch.tensor([0, 3, 5, 6]))
    assert torch.allclose(perdas, torch.full((4,), math.log(7)))


def test_perda_inversa_tende_a_zero_com_logits_concentrados():
    modelo = ModeloInverso(32)
    with torch.no_grad():
        modelo.rede[-1].weight.zero_()
        modelo.rede[-1].bias.zero_()
        modelo.rede[-1].bias[2] = 50.0
    perdas = perda_inversa(modelo, torch.randn(3, 32), torch.randn(3, 32), torch.tensor([2, 2, 2]))
    assert torch.all(perdas < 1e-6)


def test_perdas_por_transicao():
    embedding = RedeEmbedding()
    phi = embutir(embedding, observacoes(5, 2))
    phi_proximo = embutir(embedding, observacoes(5, 2, semente=1))
    acoes = torch.randint(0, 7, (5, 2))
    assert perda_direta(ModeloDireto(32), phi, acoes, phi_proximo).shape == (5, 2)
    assert perda_inversa(ModeloInverso(32), phi, phi_proximo, acoes).shape == (5, 2)


def test_perda_direta_treina_o_embedding_pelas_duas_entradas():
    embedding = RedeEmbedding()
    modelo = ModeloDireto(32)
    phi = embutir(embedding, observacoes(4))
    phi_proximo = embutir(embedding, observacoes(4, semente=1))
    perda_direta(modelo, phi, torch.zeros(4, dtype=torch.long), phi_proximo).sum().backward()
    assert all(p.grad is not None for p in modelo.parameters())
    assert any(p.grad.abs().sum() > 0 for p in embedding.parameters())


@pytest.mark.parametrize("semente", range(4))
def test_gradiente_do_modelo_direto(semente):
    torch.manual_seed(semente)
    modelo = ModeloDireto(8, ocultas=16).double()
    phi = torch.randn(3, 8, dtype=torch.float64, requires_grad=True)
    phi_proximo = torch.randn(3, 8, dtype=torch.float64, requires_grad=True)
    acoes = torch.randint(0, 7, (3,))
    assert torch.autograd.gradcheck(lambda a, b: perda_direta(modelo, a, acoes, b), (phi, phi_proximo), rtol=1e-3)


@pytest.mark.parametrize("semente", range(4))
def test_gradiente_do_modelo_inverso(semente):
    torch.manual_seed(semente)
    modelo = ModeloInverso(8, ocultas=16).double()
    phi = torch.randn(3, 8, dtype=torch.float64, requires_grad=True)
    phi_proximo = torch.randn(3, 8, dtype=torch.float64, requires_grad=True)
    acoes = torch.randint(0, 7, (3,))
    assert torch.autograd.gradcheck(lambda a, b: perda_inversa(modelo, a, b, acoes), (phi, phi_proximo), rtol=1e-3)


def test_modelo_inverso_aprende_ambiente_de_dois_estados():
    torch.manual_seed(0)
    estados = observacoes(2, semente=5)
    # A ação é função determinística do par (s_t, s_{t+1})
    transicoes = {(0, 1): 2, (1, 0): 0, (0, 0): 1, (1, 1): 3}
    origem = torch.tensor([par[0] for par in transicoes])
    destino = torch.tensor([par[1] for par in transicoes])
    acoes = torch.tensor(list(transicoes.values()))

    embedding = RedeEmbedding()
    modelo = ModeloInverso(embedding.dimensao)
    otimizador = torch.optim.RMSprop([*embedding.parameters(), *modelo.parameters()], lr=1e-3)
    for _ in range(2000):
        otimizador.zero_grad()
        perda = perda_inversa(modelo, embutir(embedding, estados[origem]), embutir(embedding, estados[destino]), acoes)
        perda.mean().backward()
        otimizador.step()
    assert perda.mean().item() < 0.05
