"""Skip-gram training with negative sampling.

The update unit is one (center, context) pair plus ``negatives`` noise rows:
maximise log sigma(u_ctx . v_center) + sum log sigma(-u_neg . v_center).  The
trainer applies that update sequentially over every surviving pair, with
per-occurrence dynamic windows, frequency subsampling, and a linear learning
rate decay down to lr/10000.

With ``workers > 1`` the corpus is sharded by line across fork-based worker
processes that update the two matrices in place without locks; racing writes
are tolerated by design, so results are only reproducible at workers = 1.
"""

from __future__ import annotations

import logging
import multiprocessing
from multiprocessing import shared_memory
from pathlib import Path
from typing import Sequence

import numpy as np
from scipy.special import expit

from wikivec.embedding.model import EmbeddingModel, TrainingConfig
from wikivec.embedding.sampling import NoiseSampler, noise_distribution

log = logging.getLogger(__name__)

LR_FLOOR_DIVISOR = 10_000.0
_NEG_REDRAW_LIMIT = 100


class TrainingError(RuntimeError):
    """Training aborted: a worker failed or the matrices went non-finite."""


def pair_loss(model: EmbeddingModel, center: int, context: int,
              negatives: Sequence[int]) -> float:
    """Loss of one pair under the current matrices, computed without updating."""
    v = model.input_vectors[center]
    pos_score = float(model.output_vectors[context] @ v)
    neg_scores = model.output_vectors[np.asarray(list(negatives), dtype=np.int64)] @ v
    # -log sigma(x) == logaddexp(0, -x); stable for large |x|.
    return float(np.logaddexp(0.0, -pos_score) + np.logaddexp(0.0, neg_scores).sum())


def sgd_step(model: EmbeddingModel, center: int, context: int,
             negatives: Sequence[int], lr: float) -> float:
    """One gradient update; returns the pre-update loss.

    Both matrices are updated from their pre-step values.  Duplicate negative
    rows are legal and accumulate sequentially.
    """
    if center == context:
        raise ValueError("center and context must differ")
    if lr <= 0:
        raise ValueError("lr must be > 0")
    rows = np.empty(len(negatives) + 1, dtype=np.int64)
    rows[0] = context
    rows[1:] = negatives
    inp, out = model.input_vectors, model.output_vectors
    v = inp[center].copy()
    u_rows = out[rows]
    scores = u_rows @ v
    loss = float(np.logaddexp(0.0, -scores[0]) + np.logaddexp(0.0, scores[1:]).sum())
    grad = -lr * expit(scores)
    grad[0] += lr
    for j in range(rows.size):
        out[rows[j]] += grad[j] * v
    inp[center] += u_rows.T @ grad
    return loss


def _keep_probabilities(counts: np.ndarray, subsample_t: float) -> np.ndarray:
    """Per-index survival probability for frequent-token subsampling."""
    if subsample_t <= 0:
        return np.ones(counts.size, dtype=np.float64)
    relative = counts / counts.sum()
    ratio = subsample_t / relative
    return np.minimum(1.0, np.sqrt(ratio) + ratio)


class _Progress:
    """Occurrence counter driving the lr schedule; lock-free by design."""

    def __init__(self, shared=None) -> None:
        self._shared = shared
        self._local = 0

    def add(self, n: int) -> int:
        if self._shared is None:
            self._local += n
            return self._local
        current = self._shared.value + n
        self._shared.value = current
        return current


def _train_pair(inp: np.ndarray, out: np.ndarray, rows: np.ndarray,
                center: int, lr: float) -> None:
    # Same update as sgd_step, minus the loss bookkeeping the hot loop skips.
    v = inp[center].copy()
    u_rows = out[rows]
    grad = -lr * expit(u_rows @ v)
    grad[0] += lr
    for j in range(rows.size):
        out[rows[j]] += grad[j] * v
    inp[center] += u_rows.T @ grad


def _run_shard(corpus_path: Path, inp: np.ndarray, out: np.ndarray,
               index: dict[str, int], sampler: NoiseSampler, keep_prob: np.ndarray,
               config: TrainingConfig, total_scheduled: int, progress: _Progress,
               worker_id: int, n_workers: int) -> None:
    """Train on every corpus line with line_no % n_workers == worker_id."""
    rng = np.random.default_rng(config.seed + worker_id)
    lr0 = config.lr_initial
    lr_min = lr0 / LR_FLOOR_DIVISOR
    k = config.negatives
    subsampling = config.subsample_t > 0
    rows = np.empty(k + 1, dtype=np.int64)
    for epoch in range(config.epochs):
        with open(corpus_path, "r", encoding="utf-8") as handle:
            for line_no, line in enumerate(handle):
                if line_no % n_workers != worker_id:
                    continue
                ids = [index[t] for t in line.split() if t in index]
                if not ids:
                    continue
                done = progress.add(len(ids))
                frac = min(1.0, done / total_scheduled)
                lr = lr0 + (lr_min - lr0) * frac
                id_arr = np.asarray(ids, dtype=np.int64)
                if subsampling:
                    id_arr = id_arr[rng.random(id_arr.size) < keep_prob[id_arr]]
                n = id_arr.size
                if n < 2:
                    continue
                radii = rng.integers(1, config.window + 1, size=n)
                for pos in range(n):
                    center = int(id_arr[pos])
                    lo = pos - radii[pos]
                    if lo < 0:
                        lo = 0
                    hi = pos + radii[pos] + 1
                    if hi > n:
                        hi = n
                    window = np.concatenate((id_arr[lo:pos], id_arr[pos + 1:hi]))
                    contexts = window[window != center]
                    m = contexts.size
                    if m == 0:
                        continue
                    negatives = sampler.draw(rng, m * k).reshape(m, k)
                    # A noise draw must not equal its pair's positive context.
                    for _ in range(_NEG_REDRAW_LIMIT):
                        bad = negatives == contexts[:, None]
                        n_bad = int(bad.sum())
                        if n_bad == 0:
                            break
                        negatives[bad] = sampler.draw(rng, n_bad)
                    for j in range(m):
                        context = int(contexts[j])
                        negs = negatives[j]
                        if (negs == context).any():
                            negs = negs[negs != context]
                            if negs.size == 0:
                                continue
                            pair_rows = np.concatenate(([context], negs))
                        else:
                            rows[0] = context
                            rows[1:] = negs
                            pair_rows = rows
                        _train_pair(inp, out, pair_rows, center, lr)
        if n_workers == 1:
            if not (np.isfinite(inp).all() and np.isfinite(out).all()):
                raise TrainingError(f"non-finite vector entries after epoch {epoch + 1}")
            log.info("epoch %d/%d done (lr now %.6f)", epoch + 1, config.epochs, lr0 +
                     (lr_min - lr0) * min(1.0, progress.add(0) / total_scheduled))


# Parallel state is installed right before the fork so workers inherit it.
_FORK_STATE: dict = {}


def _parallel_worker(worker_id: int) -> None:
    s = _FORK_STATE
    _run_shard(s["corpus_path"], s["inp"], s["out"], s["index"], s["sampler"],
               s["keep_prob"], s["config"], s["total_scheduled"], _Progress(s["progress"]),
               worker_id, s["n_workers"])


def train(corpus_path: str | Path, model: EmbeddingModel,
          config: TrainingConfig | None = None) -> EmbeddingModel:
    """Train ``model`` in place over the corpus file; returns the same model.

    ``epochs = 0`` is a no-op.  Corpus tokens outside the vocabulary are
    skipped silently; pairs whose context row equals the center row carry no
    negative-sampling signal and are skipped.
    """
    if config is None:
        config = model.config
    if model.dim != config.dim:
        raise ValueError(f"model dim {model.dim} != config dim {config.dim}")
    if config.epochs == 0:
        return model
    corpus_path = Path(corpus_path)
    vocab = model.vocab
    total_scheduled = vocab.total_tokens * config.epochs
    if total_scheduled == 0:
        return model
    sampler = noise_distribution(vocab)
    keep_prob = _keep_probabilities(vocab.counts, config.subsample_t)

    workers = config.workers
    if workers > 1 and "fork" not in multiprocessing.get_all_start_methods():
        log.warning("fork start method unavailable; training with one worker")
        workers = 1

    if workers == 1:
        _run_shard(corpus_path, model.input_vectors, model.output_vectors, vocab.index,
                   sampler, keep_prob, config, total_scheduled, _Progress(), 0, 1)
    else:
        ctx = multiprocessing.get_context("fork")
        shm_in = shm_out = None
        inp = out = None
        try:
            shm_in = shared_memory.SharedMemory(create=True, size=model.input_vectors.nbytes)
            shm_out = shared_memory.SharedMemory(create=True, size=model.output_vectors.nbytes)
            inp = np.ndarray(model.input_vectors.shape, dtype=np.float64, buffer=shm_in.buf)
            out = np.ndarray(model.output_vectors.shape, dtype=np.float64, buffer=shm_out.buf)
            inp[:] = model.input_vectors
            out[:] = model.output_vectors
            _FORK_STATE.update(
                corpus_path=corpus_path, inp=inp, out=out, index=vocab.index,
                sampler=sampler, keep_prob=keep_prob, config=config,
                total_scheduled=total_scheduled, n_workers=workers,
                progress=ctx.Value("q", 0, lock=False),
            )
            try:
                with ctx.Pool(processes=workers) as pool:
                    pool.map(_parallel_worker, range(workers))
            except Exception as exc:
                raise TrainingError(f"worker failed: {exc}") from exc
            model.input_vectors[:] = inp
            model.output_vectors[:] = out
        finally:
            _FORK_STATE.clear()
            inp = None
            out = None
            for shm in (shm_in, shm_out):
                if shm is not None:
                    shm.close()
                    shm.unlink()

    if not (np.isfinite(model.input_vectors).all() and np.isfinite(model.output_vectors).all()):
        raise TrainingError("non-finite vector entries after training")
    return model
