"""End-to-end integration tests."""

import pytest

from hashembed.cli.main import EXIT_OK, main


def run(*args) -> None:
    assert main([str(a) for a in args]) == EXIT_OK


@pytest.fixture
def workdir(tmp_path):
    """Scratch directory for one pipeline."""
    return tmp_path


class TestE2E:
    """End-to-end integration tests."""

    def test_graph_pipeline(self, workdir, capsys):
        """
        Test the node-classification pipeline:
        1. Generate a block model graph
        2. Hash its adjacency rows into codes
        3. Train GraphSAGE on decoded codes
        4. Repeat and compare outputs
        """
        graph = workdir / "sbm"
        run("synth-sbm", "--communities", 3, "--nodes-per-community", 30, "--p-in", 0.3, "--p-out", 0.01, "--out-dir", graph)
        run("encode", "--edges", graph / "edges.tsv", "--n-nodes", 90, "--c", 2, "--m", 32, "--out", workdir / "codes.gecc")
        capsys.readouterr()

        train = [
            "train-node", "--edges", graph / "edges.tsv", "--labels", graph / "labels.tsv",
            "--splits", graph / "splits.tsv", "--codes", workdir / "codes.gecc",
            "--d-c", 16, "--d-m", 16, "--d-e", 8, "--variant", "full",
            "--hidden", 16, "--k", 3, "--epochs", 3, "--batch-size", 16, "--ks", "1,2",
        ]
        run(*train)
        first = capsys.readouterr().out
        run(*train)
        second = capsys.readouterr().out

        assert first == second
        best = first.splitlines()[-1]
        assert best.startswith("best epoch ")
        assert "hit@1=" in best and "hit@2=" in best

    def test_embedding_pipeline(self, workdir, capsys):
        """
        Test the reconstruction pipeline:
        1. Generate clustered embeddings
        2. Hash them into codes (streamed input)
        3. Train a decoder to reconstruct them
        4. Resume training from the checkpoint
        """
        emb, codes, ckpt = workdir / "emb.gef", workdir / "codes.gecc", workdir / "dec.ckpt"
        run("synth-emb", "--clusters", 4, "--points-per-cluster", 25, "--dim", 8, "--out", emb)
        run("encode", "--dense", emb, "--c", 16, "--m", 4, "--block-rows", 16, "--out", codes)
        capsys.readouterr()

        train = ["train-recon", "--codes", codes, "--targets", emb, "--d-c", 16, "--d-m", 16, "--epochs", 20, "--batch-size", 32]
        run(*train, "--out", ckpt)
        before = float(capsys.readouterr().out.splitlines()[-2].split(": ")[1])
        run(*train, "--resume", ckpt, "--out", workdir / "dec2.ckpt")
        after = float(capsys.readouterr().out.splitlines()[-2].split(": ")[1])

        assert (workdir / "dec.ckpt.bin").exists()
        assert (workdir / "dec2.ckpt.loss.csv").exists()
        assert after < before
