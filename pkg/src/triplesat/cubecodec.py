"""Compact binary serialization of branching trees (.ptct format).

Cube files grow with depth times leaf count; the tree behind them needs
only one literal per internal node.  Layout: magic `PTCT`, a version
byte, varint internal-node and leaf counts, then a preorder token
stream.  Token 0 is a cutoff leaf, token 1 a refuted leaf, and any token
t >= 2 is an internal node whose decision literal is zigzag-decoded from
t - 1; children follow in yes-then-no order.
"""

from __future__ import annotations

from .lookahead import CUTOFF, REFUTED, Leaf, Node

MAGIC = b"PTCT"
VERSION = 1

_LEAF_TOKENS = {CUTOFF: 0, REFUTED: 1}
_LEAF_STATUS = {0: CUTOFF, 1: REFUTED}


class CodecError(ValueError):
    pass


def _zigzag(value):
    return (value << 1) if value >= 0 else ((-value << 1) - 1)


def _unzigzag(value):
    return (value >> 1) if value % 2 == 0 else -((value + 1) >> 1)


def _write_varint(out, value):
    while True:
        byte = value & 0x7F
        value >>= 7
        if value:
            out.append(byte | 0x80)
        else:
            out.append(byte)
            return


class _Reader:
    def __init__(self, data):
        self.data = data
        self.pos = 0

    def varint(self):
        shift = 0
        value = 0
        while True:
            if self.pos >= len(self.data):
                raise CodecError("truncated stream")
            byte = self.data[self.pos]
            self.pos += 1
            value |= (byte & 0x7F) << shift
            if not byte & 0x80:
                return value
            shift += 7

    def take(self, n):
        if self.pos + n > len(self.data):
            raise CodecError("truncated stream")
        chunk = self.data[self.pos:self.pos + n]
        self.pos += n
        return chunk


def encode_tree(tree):
    """Serialize a CubeTree to bytes; preorder, yes-branch first."""
    body = bytearray()
    internal = 0
    leaves = 0
    stack = [tree]
    while stack:
        node = stack.pop()
        if isinstance(node, Leaf):
            leaves += 1
            _write_varint(body, _LEAF_TOKENS[node.status])
        elif isinstance(node, Node):
            internal += 1
            _write_varint(body, _zigzag(node.literal) + 1)
            stack.append(node.no)
            stack.append(node.yes)
        else:
            raise CodecError("not a tree node: %r" % (node,))
    out = bytearray(MAGIC)
    out.append(VERSION)
    _write_varint(out, internal)
    _write_varint(out, leaves)
    out.extend(body)
    return bytes(out)


def write_tree_text(tree):
    """Human-readable preorder listing, one token per line, yes-branch first.

    Internal nodes print their decision literal; leaves print their
    status word.  This is the `.tree` interchange form; encode_tree is
    the compressed one.
    """
    lines = []
    stack = [tree]
    while stack:
        node = stack.pop()
        if isinstance(node, Leaf):
            lines.append(node.status)
        elif isinstance(node, Node):
            lines.append(str(node.literal))
            stack.append(node.no)
            stack.append(node.yes)
        else:
            raise CodecError("not a tree node: %r" % (node,))
    return "\n".join(lines) + "\n"


def parse_tree_text(text):
    tokens = text.split()
    pos = [0]

    def read_node():
        if pos[0] >= len(tokens):
            raise CodecError("truncated tree listing")
        token = tokens[pos[0]]
        pos[0] += 1
        if token in (CUTOFF, REFUTED):
            return Leaf(token)
        try:
            literal = int(token)
        except ValueError:
            raise CodecError("bad tree token %r" % token)
        if literal == 0:
            raise CodecError("zero decision literal")
        return Node(literal, read_node(), read_node())

    tree = read_node()
    if pos[0] != len(tokens):
        raise CodecError("%d trailing tokens" % (len(tokens) - pos[0]))
    return tree


def decode_tree(data):
    """Inverse of encode_tree; rejects bad magic, versions and trailing bytes."""
    reader = _Reader(data)
    if reader.take(4) != MAGIC:
        raise CodecError("bad magic")
    version = reader.take(1)[0]
    if version != VERSION:
        raise CodecError("unsupported version %d" % version)
    internal = reader.varint()
    leaves = reader.varint()

    seen = [0, 0]  # internal, leaf

    def read_node():
        token = reader.varint()
        if token in _LEAF_STATUS:
            seen[1] += 1
            return Leaf(_LEAF_STATUS[token])
        literal = _unzigzag(token - 1)
        if literal == 0:
            raise CodecError("zero decision literal")
        seen[0] += 1
        yes = read_node()
        no = read_node()
        return Node(literal, yes, no)

    tree = read_node()
    if (seen[0], seen[1]) != (internal, leaves):
        raise CodecError("node counts %s do not match header (%d, %d)"
                         % (tuple(seen), internal, leaves))
    if reader.pos != len(data):
        raise CodecError("%d trailing bytes" % (len(data) - reader.pos))
    return tree
