"""Machine-readable certificates and their independent re-verification.

Every certificate is a line-oriented block that parses back to a small
dataclass; ``verify`` re-checks each claim using only word, graph, and
group primitives, never trusting the construction that produced it.
"""

from dataclasses import dataclass

from .errors import CapExceeded
from .extensions import ExtensionChain
from .groups import DEFAULT_CAP, XGroup, fmt_perm, parse_perm
from .problems import ProblemParseError
from .separators import (
    Factorization,
    SeparatorWitness,
    _product_member,
    image_subgroup,
)
from .stallings import contains, stallings_graph
from .words import Alphabet, free_reduce


@dataclass(frozen=True)
class HallCertificate:
    alphabet: Alphabet
    generators: tuple
    word: tuple
    carrier: int
    base: int
    perms: tuple


@dataclass(frozen=True)
class ProductCertificate:
    alphabet: Alphabet
    subgroups: tuple
    word: tuple
    primes: tuple
    carrier: int
    perms: tuple
    status: str  # "excluded" | "member" | "partial"
    image_sizes: tuple = None
    product_size: int = None


@dataclass(frozen=True)
class FactorizationCertificate:
    alphabet: Alphabet
    subgroups: tuple
    word: tuple
    factors: tuple


def certificate_of(obj, alphabet=None, subgroups=None, word=None):
    """Convert a witness or factorization into its certificate dataclass."""
    if isinstance(obj, SeparatorWitness):
        if obj.kind == "hall":
            return HallCertificate(
                alphabet=obj.alphabet, generators=obj.subgroups[0], word=obj.word,
                carrier=obj.group.carrier, base=obj.base_vertex,
                perms=tuple(obj.group.perm(x)
                            for x in obj.alphabet.positive_letters()))
        status = "partial" if obj.excluded is None else (
            "excluded" if obj.excluded else "member")
        return ProductCertificate(
            alphabet=obj.alphabet, subgroups=obj.subgroups, word=obj.word,
            primes=obj.primes, carrier=obj.group.carrier,
            perms=tuple(obj.group.perm(x) for x in obj.alphabet.positive_letters()),
            status=status, image_sizes=obj.factor_image_sizes,
            product_size=obj.product_image_size)
    if isinstance(obj, Factorization):
        if alphabet is None or subgroups is None or word is None:
            raise ValueError("a factorization certificate needs its problem context")
        return FactorizationCertificate(
            alphabet=alphabet,
            subgroups=tuple(tuple(free_reduce(g) for g in gens) for gens in subgroups),
            word=free_reduce(word), factors=obj.factors)
    if isinstance(obj, (HallCertificate, ProductCertificate, FactorizationCertificate)):
        return obj
    raise TypeError(f"cannot build a certificate from {type(obj).__name__}")


def emit_certificate(obj, alphabet=None, subgroups=None, word=None):
    cert = certificate_of(obj, alphabet=alphabet, subgroups=subgroups, word=word)
    a = cert.alphabet
    lines = []
    if isinstance(cert, HallCertificate):
        lines.append("certificate: hall")
        lines.append(f"alphabet: {''.join(a.symbols)}")
        lines.append("subgroup H1: " + ", ".join(a.format(g) for g in cert.generators))
        lines.append(f"word: {a.format(cert.word)}")
        lines.append(f"carrier: {cert.carrier}")
        lines.append(f"base: {cert.base}")
        for s, p in zip(a.symbols, cert.perms):
            lines.append(f"perm {s}: {fmt_perm(p)}")
    elif isinstance(cert, ProductCertificate):
        lines.append("certificate: product-separator")
        lines.append(f"alphabet: {''.join(a.symbols)}")
        for i, gens in enumerate(cert.subgroups, start=1):
            lines.append(f"subgroup H{i}: " + ", ".join(a.format(g) for g in gens))
        lines.append(f"word: {a.format(cert.word)}")
        lines.append("primes: " + ", ".join(str(p) for p in cert.primes))
        lines.append(f"carrier: {cert.carrier}")
        for s, p in zip(a.symbols, cert.perms):
            lines.append(f"perm {s}: {fmt_perm(p)}")
        lines.append(f"status: {cert.status}")
        if cert.image_sizes is not None:
            for i, n in enumerate(cert.image_sizes, start=1):
                lines.append(f"image size {i}: {n}")
        if cert.product_size is not None:
            lines.append(f"product size: {cert.product_size}")
    else:
        lines.append("certificate: factorization")
        lines.append(f"alphabet: {''.join(a.symbols)}")
        for i, gens in enumerate(cert.subgroups, start=1):
            lines.append(f"subgroup H{i}: " + ", ".join(a.format(g) for g in gens))
        lines.append(f"word: {a.format(cert.word)}")
        for i, f in enumerate(cert.factors, start=1):
            lines.append(f"factor {i}: {a.format(f)}")
    return "\n".join(lines) + "\n"


def parse_certificate(text):
    rows = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise ProblemParseError(line_no, f"expected 'key: value', got {line!r}")
        key, value = (part.strip() for part in line.split(":", 1))
        rows.append((line_no, key, value))
    if not rows or rows[0][1] != "certificate":
        raise ProblemParseError(rows[0][0] if rows else 0,
                                "certificate files start with 'certificate: <kind>'")
    kind = rows[0][2]
    fields = {}
    order = []
    for line_no, key, value in rows[1:]:
        fields.setdefault(key, []).append((line_no, value))
        order.append(key)

    def one(key, required=True):
        if key not in fields:
            if required:
                raise ProblemParseError(0, f"missing field {key!r}")
            return None
        return fields[key][0][1]

    alphabet = Alphabet(one("alphabet"))
    word = alphabet.parse(one("word"))

    def subgroup_rows():
        out = []
        for key in dict.fromkeys(order):
            if key.startswith("subgroup "):
                value = fields[key][0][1]
                out.append(tuple(alphabet.parse(tok) for tok in value.split(",")))
        return tuple(out)

    def perm_rows(carrier):
        out = []
        for s in alphabet.symbols:
            key = f"perm {s}"
            if key not in fields:
                raise ProblemParseError(0, f"missing field {key!r}")
            out.append(parse_perm(fields[key][0][1], carrier))
        return tuple(out)

    if kind == "hall":
        carrier = int(one("carrier"))
        return HallCertificate(alphabet, subgroup_rows()[0], word, carrier,
                               int(one("base")), perm_rows(carrier))
    if kind == "product-separator":
        carrier = int(one("carrier"))
        primes = tuple(int(tok) for tok in one("primes").split(",") if tok.strip())
        sizes = []
        for key in order:
            if key.startswith("image size "):
                sizes.append(int(fields[key][0][1]))
        product_size = one("product size", required=False)
        return ProductCertificate(
            alphabet, subgroup_rows(), word, primes, carrier, perm_rows(carrier),
            one("status"), tuple(sizes) if sizes else None,
            int(product_size) if product_size is not None else None)
    if kind == "factorization":
        factors = []
        for key in order:
            if key.startswith("factor "):
                factors.append(alphabet.parse(fields[key][0][1]))
        return FactorizationCertificate(alphabet, subgroup_rows(), word, tuple(factors))
    raise ProblemParseError(rows[0][0], f"unknown certificate kind {kind!r}")


def verify_certificate(cert, cap=DEFAULT_CAP):
    """Re-check every claim; returns (ok, messages)."""
    if isinstance(cert, str):
        cert = parse_certificate(cert)
    messages = []
    a = cert.alphabet
    if isinstance(cert, HallCertificate):
        group = XGroup(a, cert.perms)
        if not 0 <= cert.base < group.carrier:
            return False, ["base vertex out of range"]
        for g in cert.generators:
            if group.evaluate(free_reduce(g))[cert.base] != cert.base:
                return False, [f"generator {a.format(g)} moves the base vertex"]
        if group.evaluate(free_reduce(cert.word))[cert.base] == cert.base:
            return False, ["word image fixes the base vertex; nothing is separated"]
        messages.append("base vertex fixed by all generators, moved by the word")
        return True, messages
    if isinstance(cert, ProductCertificate):
        group = XGroup(a, cert.perms)
        if len(cert.primes) != len(cert.subgroups) - 1:
            return False, ["prime list length does not match the subgroup count"]
        chain = ExtensionChain(group, cert.primes)
        top = chain.top
        target = top.evaluate(free_reduce(cert.word))
        if cert.status == "partial":
            messages.append("partial certificate: exclusion claim not checked")
            return True, messages
        try:
            images = [image_subgroup(top, gens, cap) for gens in cert.subgroups]
        except CapExceeded:
            return False, ["image enumeration exceeded the cap during verification"]
        if cert.image_sizes is not None:
            actual = tuple(len(img) for img in images)
            if actual != cert.image_sizes:
                return False, [f"stated image sizes {cert.image_sizes} != {actual}"]
        member = _product_member(top, images, target, cap)
        if cert.status == "excluded" and member:
            return False, ["word image found inside the image product"]
        if cert.status == "member" and not member:
            return False, ["word image not found in the image product"]
        messages.append(f"image product membership re-checked: {member}")
        return True, messages
    if isinstance(cert, FactorizationCertificate):
        if len(cert.factors) != len(cert.subgroups):
            return False, ["factor count does not match the subgroup count"]
        for i, (gens, factor) in enumerate(zip(cert.subgroups, cert.factors), start=1):
            h = stallings_graph(a, gens)
            if not contains(h, factor):
                return False, [f"factor {i} is not in subgroup {i}"]
        product = ()
        for f in cert.factors:
            product += f
        if free_reduce(product) != free_reduce(cert.word):
            return False, ["factor product is not the word"]
        messages.append("all factors verified and their product equals the word")
        return True, messages
    return False, [f"unknown certificate type {type(cert).__name__}"]
