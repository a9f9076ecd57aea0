"""Small shared helpers: id ordering, JSON conversion, resource ceilings."""

import os
from collections.abc import Mapping

DEFAULT_MAX_CELLS = 200_000


class ResourceLimit(RuntimeError):
    """Raised when an enumeration exceeds the configured cell ceiling."""


class SchemaError(ValueError):
    """Malformed input data. `pointer` is a JSON pointer to the bad field."""

    def __init__(self, message, pointer=""):
        super().__init__(f"{pointer or '/'}: {message}")
        self.pointer = pointer or "/"
        self.detail = message


def max_cells(value=None):
    if value is not None:
        return int(value)
    env = os.environ.get("HOFIB_MAX_CELLS")
    return int(env) if env else DEFAULT_MAX_CELLS


def key(x):
    """Total order on ids built from None, bool, int, str and tuples."""
    if x is None:
        return (0,)
    if isinstance(x, bool):
        return (1, int(x))
    if isinstance(x, int):
        return (2, x)
    if isinstance(x, str):
        return (3, x)
    if isinstance(x, (tuple, list)):
        return (4, tuple(key(y) for y in x))
    if isinstance(x, frozenset):
        return (5, tuple(sorted(key(y) for y in x)))
    raise TypeError(f"unsupported id {x!r}")


def ordered(xs):
    return sorted(xs, key=key)


def to_tuple(x):
    """JSON value -> hashable id (lists become tuples)."""
    if isinstance(x, list):
        return tuple(to_tuple(y) for y in x)
    return x


def to_json(x):
    if isinstance(x, (tuple, list)):
        return [to_json(y) for y in x]
    if isinstance(x, frozenset):
        return [to_json(y) for y in ordered(x)]
    return x


class LazyTable(Mapping):
    """A table whose entries are computed on first access and cached.

    `domain` is a zero-argument callable yielding the keys; `fn` maps a key
    to its value. Iteration walks the domain, so the table behaves like a
    fully materialised dict for validators and serialisers.
    """

    def __init__(self, fn, domain, unpack=True):
        self._fn = fn
        self._domain = domain
        self._unpack = unpack
        self._cache = {}
        self._keys = None

    def __getitem__(self, k):
        try:
            return self._cache[k]
        except KeyError:
            pass
        v = self._fn(*k) if self._unpack else self._fn(k)
        self._cache[k] = v
        return v

    def keys_list(self):
        if self._keys is None:
            self._keys = list(self._domain())
        return self._keys

    def __iter__(self):
        return iter(self.keys_list())

    def __len__(self):
        return len(self.keys_list())

    def __contains__(self, k):
        if k in self._cache:
            return True
        if self._keys is None:
            self._keys = list(self._domain())
        if not hasattr(self, "_keyset"):
            self._keyset = set(self._keys)
        return k in self._keyset

    def materialize(self):
        return {k: self[k] for k in self}
