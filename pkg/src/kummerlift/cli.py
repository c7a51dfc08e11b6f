"""Command-line interface: keys, signatures, compression and operation-count benches.

Exit codes: 0 success, 1 verification rejected, 2 usage (click), 3 I/O
failure, 4 malformed encoding, 5 count mismatch in ``bench --strict`` or a
failed ``params-check``.
"""

from __future__ import annotations

import os
import random
import sys
from dataclasses import dataclass

import click

from . import schnorr
from .chain import ladder_mul, two_dim_mul
from .codec import (
    EncodingError,
    decode_point_256,
    encode_point_256,
    jac_compress,
    jac_decompress,
)
from .ecurve import (
    EdwardsBackend,
    EdwardsCurve,
    MontgomeryBackend,
    MontgomeryCurve,
    WeierstrassBackend,
    WeierstrassCurve,
)
from .fastkummer import FastKummerBackend, GeneralKummerBackend, gaudry_schost
from .field import NONSQUARE, FieldContext, OpCounter, cost
from .genus2 import IDENTITY, jac_mul, random_point

EXIT_OK = 0
EXIT_REJECT = 1
EXIT_IO = 3
EXIT_ENCODING = 4
EXIT_MISMATCH = 5

MODELS = ("montgomery", "weierstrass", "edwards", "general-kummer", "fast-kummer")
BENCH_Q = (1 << 127) - 1


# ---------------------------------------------------------------------------
# closed-form counts printed with the algorithms, keyed by (model, dim)


def published_cost(model: str, dim: int, beta: int) -> OpCounter | None:
    b = beta
    table = {
        ("montgomery", 1): dict(M=5 * b + 10, S=4 * b + 2, A=b + 1, B=1, a=8 * b + 6, I=1),
        ("montgomery", 2): dict(M=8 * b + 14, S=6 * b + 2, A=b + 1, B=1, a=14 * b + 13, I=2),
        ("weierstrass", 1): dict(M=8 * b + 5, S=7 * b, a_=2 * b, b=3 * b, a=12 * b + 3, I=1),
        ("weierstrass", 2): dict(M=14 * b + 12, S=9 * b + 3, a_=3 * b + 1, b=4 * b + 1, a=16 * b + 11, I=2),
        ("fast-kummer", 1): dict(M=10 * b + 134, S=9 * b + 12, c=6 * b + 10, a=32 * b + 93, I=2),
        ("fast-kummer", 2): dict(M=17 * b + 194, S=13 * b + 17, c=9 * b + 16, a=56 * b + 160, I=2),
    }
    row = table.get((model, dim))
    if row is None:
        return None
    row = dict(row)
    if "a_" in row:
        # the Weierstrass constant class is also called "a"
        c = cost(**{k: v for k, v in row.items() if k != "a_"})
        c.mc["a"] = row["a_"]
        return c
    return cost(**row)


SCHEME_COSTS = {
    "keygen": cost(M=2654, S=2312, c=1546, a=8221, I=2),
    "sign": cost(M=2654, S=2280, c=1522, a=8157, I=2),
    "verify": cost(M=4478, S=3325, c=2308, a=14272, I=2),
}


# ---------------------------------------------------------------------------
# deterministic bench instances


@dataclass
class Instance:
    model: str
    backend: object
    P: object
    Q: object
    q: int


def _lift(F: FieldContext, rng: random.Random, rhs):
    while True:
        x = rng.randrange(1, F.q)
        y = F.sqrt(rhs(x))
        if y is not NONSQUARE and y:
            return x, y


def model_instance(model: str, rng: random.Random) -> Instance:
    """A curve of the given model over GF(2^127 - 1) with two random points."""
    q = BENCH_Q
    F = FieldContext(q)
    if model == "montgomery":
        C = MontgomeryCurve(q, rng.randrange(3, q), rng.randrange(1, q))
        iB = pow(C.B, -1, q)
        rhs = lambda x: x * (x * x + C.A * x + 1) * iB % q  # noqa: E731
        return Instance(model, MontgomeryBackend(C), _lift(F, rng, rhs), _lift(F, rng, rhs), q)
    if model == "weierstrass":
        C = WeierstrassCurve(q, rng.randrange(q), rng.randrange(q))
        rhs = lambda x: (x**3 + C.a * x + C.b) % q  # noqa: E731
        return Instance(model, WeierstrassBackend(C), _lift(F, rng, rhs), _lift(F, rng, rhs), q)
    if model == "edwards":
        r = rng.randrange(2, q)
        C = EdwardsCurve(q, r * r % q, r)

        def rhs(y):
            return (1 - y * y) * pow(1 - C.d * y * y, -1, q) % q

        pts = [_lift(F, rng, rhs)[::-1] for _ in range(2)]
        return Instance(model, EdwardsBackend(C), pts[0], pts[1], q)
    if model in ("general-kummer", "fast-kummer"):
        K = gaudry_schost()
        cls = FastKummerBackend if model == "fast-kummer" else GeneralKummerBackend
        return Instance(model, cls(K), random_point(K.curve, rng), random_point(K.curve, rng), K.q)
    raise click.BadParameter(f"unknown model {model!r}")


def random_scalar(rng: random.Random, beta: int) -> int:
    return rng.getrandbits(beta) | (1 << (beta - 1))


def measure(model: str, dim: int, beta: int, seed: int = 0) -> tuple[OpCounter, OpCounter]:
    """(counter, setup counter) of one chain run with random beta-bit scalars."""
    rng = random.Random(seed)
    inst = model_instance(model, rng)
    ctx, setup = FieldContext(inst.q), FieldContext(inst.q)
    m = random_scalar(rng, beta)
    if dim == 1:
        ladder_mul(m, inst.P, inst.backend, ctx, setup, beta)
    else:
        n = random_scalar(rng, beta)
        two_dim_mul(m, n, inst.P, inst.Q, inst.backend, ctx, setup, beta)
    return ctx.counter, setup.counter


# ---------------------------------------------------------------------------
# output helpers


def _fields(c: OpCounter) -> str:
    mc = ",".join(f"{k}:{c.mc[k]}" for k in sorted(c.mc) if c.mc[k])
    return f"{c.M}|{c.S}|{mc or '-'}|{c.a}|{c.I}|{c.E}"


def _read(path: str, raw: bool) -> bytes:
    try:
        if path == "-":
            data = sys.stdin.buffer.read()
        else:
            with open(path, "rb") as fh:
                data = fh.read()
    except OSError as exc:
        click.echo(f"error: io: {exc}", err=True)
        sys.exit(EXIT_IO)
    if raw:
        return data
    try:
        return bytes.fromhex(data.decode("ascii").strip())
    except (UnicodeDecodeError, ValueError):
        click.echo(f"error: encoding: {path} is not hex", err=True)
        sys.exit(EXIT_ENCODING)


def _write(path: str | None, data: bytes, raw: bool) -> None:
    out = data if raw else (data.hex() + "\n").encode()
    try:
        if path is None or path == "-":
            sys.stdout.buffer.write(out)
            sys.stdout.flush()
        else:
            with open(path, "wb") as fh:
                fh.write(out)
    except OSError as exc:
        click.echo(f"error: io: {exc}", err=True)
        sys.exit(EXIT_IO)


def _read_message(path: str) -> bytes:
    try:
        if path == "-":
            return sys.stdin.buffer.read()
        with open(path, "rb") as fh:
            return fh.read()
    except OSError as exc:
        click.echo(f"error: io: {exc}", err=True)
        sys.exit(EXIT_IO)


def _secret(path: str, raw: bool) -> bytes:
    d = _read(path, raw)
    if len(d) != 32:
        click.echo("error: encoding: secret key must be 32 bytes", err=True)
        sys.exit(EXIT_ENCODING)
    return d


# ---------------------------------------------------------------------------
# commands


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
def main() -> None:
    """Uniform scalar multiplication and Schnorr signatures on a fast Kummer surface."""


@main.command()
@click.option("--key", "key_path", required=True, help="Secret key file (written).")
@click.option("--pub", "pub_path", default=None, help="Public key file (default stdout).")
@click.option("--seed", type=int, default=None, help="Derive the secret from this seed.")
@click.option("--raw", is_flag=True, help="Binary instead of hex I/O.")
def keygen(key_path, pub_path, seed, raw):
    """Create a secret key and print or write its public key."""
    d = random.Random(seed).randbytes(32) if seed is not None else os.urandom(32)
    kp = schnorr.keygen(d)
    _write(key_path, d, raw)
    _write(pub_path, kp.public, raw)


@main.command()
@click.option("--key", "key_path", required=True)
@click.option("--msg", "msg_path", default="-", help="Message file (default stdin).")
@click.option("--sig", "sig_path", default=None, help="Signature file (default stdout).")
@click.option("--raw", is_flag=True)
def sign(key_path, msg_path, sig_path, raw):
    """Sign a message."""
    kp = schnorr.keygen(_secret(key_path, raw))
    _write(sig_path, schnorr.sign(_read_message(msg_path), kp), raw)


@main.command()
@click.option("--pub", "pub_path", required=True)
@click.option("--msg", "msg_path", default="-")
@click.option("--sig", "sig_path", required=True)
@click.option("--raw", is_flag=True)
def verify(pub_path, msg_path, sig_path, raw):
    """Check a signature; exit 0 on accept and 1 on reject."""
    pub = _read(pub_path, raw)
    sig = _read(sig_path, raw)
    ok = schnorr.verify(_read_message(msg_path), sig, pub)
    click.echo("accept" if ok else "reject")
    sys.exit(EXIT_OK if ok else EXIT_REJECT)


@main.command()
@click.option("--seed", type=int, default=0, help="Pick a random point from this seed.")
@click.option("--raw", is_flag=True)
def compress(seed, raw):
    """Print a random Jacobian point and its 256-bit encoding."""
    params = schnorr.default_params()
    P = random_point(params.curve, random.Random(seed))
    a1, a0, b1, b0 = P.coords
    click.echo(f"point|{a1:x}|{a0:x}|{b1:x}|{b0:x}", err=raw)
    _write(None, encode_point_256(jac_compress(FieldContext(params.q), params.curve, P)), raw)


@main.command()
@click.option("--pub", "pub_path", required=True, help="File holding a 256-bit point encoding.")
@click.option("--raw", is_flag=True)
def decompress(pub_path, raw):
    """Decode a 256-bit point encoding to Mumford coordinates."""
    params = schnorr.default_params()
    try:
        P = jac_decompress(FieldContext(params.q), params.curve, decode_point_256(_read(pub_path, raw)))
    except EncodingError as exc:
        click.echo(f"error: encoding: {exc}", err=True)
        sys.exit(EXIT_ENCODING)
    a1, a0, b1, b0 = P.coords
    click.echo(f"point|{a1:x}|{a0:x}|{b1:x}|{b0:x}")


@main.command()
@click.option("--model", type=click.Choice(MODELS), multiple=True, help="Repeatable; default all.")
@click.option("--dim", type=click.IntRange(1, 2), multiple=True, help="Repeatable; default both.")
@click.option("--beta", type=click.IntRange(2, 4096), multiple=True, help="Repeatable; default 256.")
@click.option("--seed", type=int, default=0)
@click.option("--scheme", is_flag=True, help="Also count keygen, sign and verify.")
@click.option("--figure", type=click.Path(dir_okay=False), default=None, help="Write a bar chart here.")
@click.option("--strict", is_flag=True, help="Exit 5 if any row differs from the printed count.")
def bench(model, dim, beta, seed, scheme, figure, strict):
    """Count field operations per model and compare with the published closed forms.

    Rows starting with COUNT are '|'-delimited:
    COUNT|model|dim|beta|M|S|mc|a|I|E|expected|match.
    """
    models = model or MODELS
    dims = dim or (1, 2)
    betas = beta or (256,)
    rows = []
    for mdl in models:
        for d in dims:
            for b in betas:
                got, _ = measure(mdl, d, b, seed)
                rows.append((mdl, str(d), b, got, published_cost(mdl, d, b)))
    if scheme:
        for name, (got, _) in schnorr.operation_counts().items():
            rows.append(("schnorr", name, 252, got, SCHEME_COSTS.get(name)))

    mismatches = 0
    click.echo(f"{'model':<15} {'dim':<11} {'beta':>4}  {'measured':<46} {'published':<40} match")
    for mdl, d, b, got, exp in rows:
        match = "n/a" if exp is None else ("yes" if got == exp else "no")
        mismatches += match == "no"
        click.echo(f"{mdl:<15} {d:<11} {b:>4}  {str(got):<46} {str(exp or '-'):<40} {match}")
    for mdl, d, b, got, exp in rows:
        match = "n/a" if exp is None else ("yes" if got == exp else "no")
        click.echo(f"COUNT|{mdl}|{d}|{b}|{_fields(got)}|{exp if exp is not None else '-'}|{match}")
    if figure:
        _plot(rows, figure)
        click.echo(f"figure|{figure}")
    sys.exit(EXIT_MISMATCH if strict and mismatches else EXIT_OK)


def _plot(rows, path: str) -> None:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    labels = [f"{m}\n{d} b={b}" for m, d, b, _, _ in rows]
    kinds = ("M", "S", "mc", "a")

    def vals(c):
        return (c.M, c.S, c.mc_total, c.a) if c is not None else (0, 0, 0, 0)

    fig, axes = plt.subplots(1, len(kinds), figsize=(4 * len(kinds), 0.4 * len(rows) + 2), sharey=True)
    ys = range(len(rows))
    for ax, k, i in zip(axes, kinds, range(len(kinds))):
        ax.barh([y - 0.2 for y in ys], [vals(r[3])[i] for r in rows], height=0.4, label="measured")
        ax.barh([y + 0.2 for y in ys], [vals(r[4])[i] for r in rows], height=0.4, label="published")
        ax.set_title(k)
    axes[0].set_yticks(list(ys))
    axes[0].set_yticklabels(labels, fontsize=7)
    axes[0].invert_yaxis()
    axes[-1].legend(loc="lower right", fontsize=7)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


@main.command("params-check")
@click.option("--points", type=int, default=50, help="Random points to annihilate.")
@click.option("--seed", type=int, default=0)
def params_check(points, seed):
    """Check that 16N kills random points and that the generator has order N."""
    params = schnorr.default_params()
    curve, N = params.curve, params.N
    rng = random.Random(seed)
    killed = sum(jac_mul(curve, 16 * N, random_point(curve, rng)) == IDENTITY for _ in range(points))
    gen_ok = jac_mul(curve, N, params.P) == IDENTITY and params.P != IDENTITY
    click.echo(f"annihilated|{killed}|{points}")
    click.echo(f"generator_order_N|{'yes' if gen_ok else 'no'}")
    sys.exit(EXIT_OK if killed == points and gen_ok else EXIT_MISMATCH)


if __name__ == "__main__":
    main()
