"""Synthetic graphs, embeddings and splits."""

from hashembed.synth.clusters import cluster_labels, gen_cluster_embeddings
from hashembed.synth.sbm import gen_sbm
from hashembed.synth.splits import gen_splits

__all__ = ["cluster_labels", "gen_cluster_embeddings", "gen_sbm", "gen_splits"]
