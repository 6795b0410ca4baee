"""Compare the compiled kernels with the numpy fallback.

Usage: python benchmarks/bench_kernels.py [--hidden 32] [--repeat 200]

Prints per-kernel timings for both backends, their maximum disagreement, and
the wall time of one full training update per objective under each backend.
"""

from __future__ import annotations

import argparse
import time
import timeit

import numpy as np

from saml import _kernels_py as py_kernels
from saml import kernels
from saml import tensor as T


def _time(fn, number):
    return min(timeit.repeat(fn, number=number, repeat=3)) / number


def kernel_table(hidden: int, number: int):
    try:
        from saml import _ckernels as c_kernels
    except ImportError:
        print("compiled extension not built; nothing to compare")
        return
    rng = np.random.default_rng(0)
    B, V, rows = 96, 64, 960
    print(f"{'dtype':8} {'kernel':16} {'numpy us':>10} {'cython us':>10} {'speedup':>8} {'max |diff|':>11}")
    for dt in (np.float32, np.float64):
        g = rng.normal(size=(B, 4 * hidden)).astype(dt)
        c = rng.normal(size=(B, hidden)).astype(dt)
        dh = rng.normal(size=(B, hidden)).astype(dt)
        x = rng.normal(size=(rows, 2 * hidden)).astype(dt)
        gain = rng.normal(size=2 * hidden).astype(dt)
        bias = rng.normal(size=2 * hidden).astype(dt)
        logits = rng.normal(size=(rows, V)).astype(dt)
        _, _, acts, tc = py_kernels.lstm_fwd(g, c)
        _, xhat, inv = py_kernels.layer_norm_fwd(x, gain, bias, 1e-5)
        y = py_kernels.log_softmax_fwd(logits)
        cases = [
            ("lstm_fwd", lambda M: M.lstm_fwd(g, c)),
            ("lstm_bwd", lambda M: M.lstm_bwd(dh, dh, acts, c, tc)),
            ("layer_norm_fwd", lambda M: M.layer_norm_fwd(x, gain, bias, 1e-5)),
            ("layer_norm_bwd", lambda M: M.layer_norm_bwd(x, xhat, inv, gain)),
            ("log_softmax_fwd", lambda M: M.log_softmax_fwd(logits)),
            ("log_softmax_bwd", lambda M: M.log_softmax_bwd(logits, y)),
        ]
        for name, fn in cases:
            tp = _time(lambda: fn(py_kernels), number) * 1e6
            tc_ = _time(lambda: fn(c_kernels), number) * 1e6
            a, b = fn(py_kernels), fn(c_kernels)
            a = a if isinstance(a, tuple) else (a,)
            b = b if isinstance(b, tuple) else (b,)
            diff = max(float(np.abs(p - q).max()) for p, q in zip(a, b))
            print(f"{dt.__name__:8} {name:16} {tp:10.1f} {tc_:10.1f} {tp / tc_:7.2f}x {diff:11.2e}")


def train_step_table(hidden: int, updates: int):
    from saml.data import build_vocab, encode_pairs, make_batches, synth_task
    from saml.model import ModelConfig, Seq2Seq
    from saml.training import TrainConfig, batch_loss

    src, tgt = synth_task("lexicon", 30, (5, 15), 1000, seed=0)
    sv, tv = build_vocab(src), build_vocab(tgt)
    batch = make_batches(encode_pairs(src, tgt, sv, tv), 1024, seed=0)[0]
    print(f"\none update on {len(batch)} sentences / {batch.n_words} words, d={hidden}, float32")
    print(f"{'objective':10} " + " ".join(f"{b + ' ms':>10}" for b in ("numpy", "cython")))
    with T.precision(32):
        model = Seq2Seq.create(ModelConfig(len(sv), len(tv), hidden, hidden, hidden), seed=0)
        model.params = {k: v.astype(np.float32) for k, v in model.params.items()}
        for obj in ("ml", "ss", "dss", "saml"):
            cfg = TrainConfig(objective=obj)
            cells = []
            for backend in ("python", "cython"):
                if backend == "cython" and not kernels.HAVE_EXTENSION:
                    cells.append(float("nan"))
                    continue
                prev = kernels.use_backend(backend)
                t0 = time.perf_counter()
                for i in range(updates):
                    batch_loss(model, batch, cfg, 0.5, np.random.default_rng(i))
                cells.append((time.perf_counter() - t0) / updates * 1e3)
                kernels.use_backend(prev)
            print(f"{obj:10} " + " ".join(f"{c:10.1f}" for c in cells))


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--hidden", type=int, default=32)
    ap.add_argument("--repeat", type=int, default=200)
    ap.add_argument("--updates", type=int, default=3)
    args = ap.parse_args()
    kernel_table(args.hidden, args.repeat)
    train_step_table(args.hidden, args.updates)


if __name__ == "__main__":
    main()
