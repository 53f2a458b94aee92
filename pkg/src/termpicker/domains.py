"""Pay-level domains and vocabulary namespaces.

A pay-level domain (PLD) is the registrable domain of a host: one label
below a public suffix. It stands in for "one data publisher". Suffix rules
come from the snapshot bundled with the package, so results never drift with
the live public-suffix list. Hosts whose suffix is not covered by the
snapshot have no PLD.
"""

from __future__ import annotations

from functools import lru_cache
from importlib import resources
from pathlib import Path
from urllib.parse import urlsplit


class PayLevelDomainError(ValueError):
    """Raised when an IRI has no derivable pay-level domain."""


class PublicSuffixList:
    """Suffix matcher over a fixed rule file.

    Rules follow the publicsuffix.org format: one rule per line, ``*``
    wildcard labels, ``!`` exception rules, ``//`` comments. Matching walks
    labels right to left; exception rules beat wildcards, otherwise the rule
    with the most labels wins. There is deliberately no implicit ``*``
    default rule: hosts under suffixes absent from the snapshot are treated
    as having no PLD.
    """

    def __init__(self, rules: list[str]):
        self._rules: set[tuple[str, ...]] = set()
        self._exceptions: set[tuple[str, ...]] = set()
        self._max_labels = 0
        for rule in rules:
            rule = rule.strip().lower()
            if not rule or rule.startswith("//"):
                continue
            if rule.startswith("!"):
                labels = tuple(rule[1:].split("."))
                self._exceptions.add(labels)
            else:
                labels = tuple(rule.split("."))
                self._rules.add(labels)
            self._max_labels = max(self._max_labels, len(labels))

    @classmethod
    def from_file(cls, path: str | Path) -> "PublicSuffixList":
        text = Path(path).read_text(encoding="utf-8")
        return cls(text.splitlines())

    def public_suffix(self, host: str) -> str | None:
        """Longest matching public suffix of ``host``, or None."""
        labels = host.split(".")
        n = len(labels)
        # exception rules take priority; the suffix is the rule minus its
        # leftmost label
        for take in range(min(n, self._max_labels), 0, -1):
            tail = tuple(labels[n - take :])
            if tail in self._exceptions:
                return ".".join(tail[1:])
        best: int | None = None
        for take in range(1, min(n, self._max_labels) + 1):
            tail = tuple(labels[n - take :])
            wild = ("*",) + tail[1:]
            if tail in self._rules or wild in self._rules:
                best = take
        return ".".join(labels[n - best :]) if best is not None else None

    def registrable_domain(self, host: str) -> str | None:
        """Public suffix plus one label, or None if not derivable."""
        host = host.rstrip(".").lower()
        if not host:
            return None
        suffix = self.public_suffix(host)
        if suffix is None:
            return None
        n_suffix = suffix.count(".") + 1 if suffix else 0
        labels = host.split(".")
        if len(labels) <= n_suffix:
            return None  # host is itself a public suffix
        return ".".join(labels[len(labels) - n_suffix - 1 :])


@lru_cache(maxsize=1)
def default_suffix_list() -> PublicSuffixList:
    text = resources.files("termpicker.data").joinpath("public_suffix_list.dat").read_text("utf-8")
    return PublicSuffixList(text.splitlines())


def _is_ip_literal(host: str) -> bool:
    if ":" in host:  # urlsplit strips brackets from IPv6 literals
        return True
    parts = host.split(".")
    return all(p.isdigit() for p in parts if p)


def pay_level_domain(iri: str, psl: PublicSuffixList | None = None) -> str:
    """Registrable domain of an IRI's host, lowercased.

    Raises :class:`PayLevelDomainError` for IRIs without a host, IP-literal
    hosts, and hosts whose suffix is unknown to the bundled snapshot.
    """
    try:
        host = urlsplit(iri).hostname
    except ValueError as exc:
        raise PayLevelDomainError(f"no pay-level domain: unparseable IRI {iri!r}") from exc
    if not host:
        raise PayLevelDomainError(f"no pay-level domain: no host in {iri!r}")
    if _is_ip_literal(host):
        raise PayLevelDomainError(f"no pay-level domain: IP-literal host in {iri!r}")
    psl = psl or default_suffix_list()
    pld = psl.registrable_domain(host)
    if pld is None:
        raise PayLevelDomainError(f"no pay-level domain: unknown suffix for host {host!r}")
    return pld


def vocabulary_namespace(term: str) -> str:
    """Namespace prefix of a vocabulary term.

    Terms in hash namespaces keep everything up to and including the first
    ``#``; otherwise everything up to and including the last ``/``.
    """
    hash_pos = term.find("#")
    if hash_pos != -1:
        return term[: hash_pos + 1]
    slash_pos = term.rfind("/")
    if slash_pos != -1:
        return term[: slash_pos + 1]
    raise ValueError(f"no namespace separator in term {term!r}")
