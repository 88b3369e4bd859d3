"""Mini-DOM document model and fixture loader.

Documents are immutable trees of elements with string attributes.  The
fixture format is JSON with nested records ``{tag, attrs{k:v}, children
[...]}`` (attrs/children optional); duplicate attribute keys are a format
error.  Full HTML parsing is deliberately out of scope.
"""

from __future__ import annotations

import json
from typing import Iterator, Optional, Sequence

__all__ = ["DomNode", "DomDocument", "DocumentFormatError", "load_document", "parse_document"]


class DocumentFormatError(ValueError):
    """Malformed document fixture."""


class DomNode:
    """One element: tag, attributes, ordered children, stable identity."""

    __slots__ = ("tag", "attrs", "children", "parent", "child_index", "node_id")

    def __init__(self, tag: str, attrs: dict, children: Sequence["DomNode"]):
        self.tag = tag
        self.attrs = dict(attrs)
        self.children = tuple(children)
        self.parent: Optional[DomNode] = None
        self.child_index = -1  # 0-based position among siblings; -1 for the root
        self.node_id = -1  # document-order index, set by DomDocument

    def class_tokens(self) -> list:
        return self.attrs.get("class", "").split()

    def __repr__(self) -> str:
        return f"<{self.tag} #{self.node_id}>"


class DomDocument:
    """A rooted node tree with document-order node ids."""

    def __init__(self, root: DomNode):
        self.root = root
        self.nodes: tuple[DomNode, ...] = tuple(self._assign(root))

    def _assign(self, root: DomNode) -> Iterator[DomNode]:
        counter = 0
        stack = [root]
        order = []
        while stack:
            node = stack.pop()
            node.node_id = counter
            counter += 1
            order.append(node)
            for i, child in enumerate(node.children):
                child.parent = node
                child.child_index = i
            stack.extend(reversed(node.children))
        return iter(order)

    def __len__(self) -> int:
        return len(self.nodes)

    def node(self, node_id: int) -> DomNode:
        return self.nodes[node_id]

    @property
    def max_children(self) -> int:
        return max((len(n.children) for n in self.nodes), default=0)


def _build(record, path: str) -> DomNode:
    if not isinstance(record, dict):
        raise DocumentFormatError(f"{path}: element record must be an object")
    unknown = set(record) - {"tag", "attrs", "children"}
    if unknown:
        raise DocumentFormatError(f"{path}: unknown keys {sorted(unknown)}")
    tag = record.get("tag")
    if not isinstance(tag, str) or not tag:
        raise DocumentFormatError(f"{path}: missing or empty 'tag'")
    attrs = record.get("attrs", {})
    if not isinstance(attrs, dict) or not all(
        isinstance(k, str) and isinstance(v, str) for k, v in attrs.items()
    ):
        raise DocumentFormatError(f"{path}: 'attrs' must map strings to strings")
    raw_children = record.get("children", [])
    if not isinstance(raw_children, list):
        raise DocumentFormatError(f"{path}: 'children' must be a list")
    children = [_build(c, f"{path}.children[{i}]") for i, c in enumerate(raw_children)]
    return DomNode(tag, attrs, children)


def _reject_duplicate_keys(pairs):
    seen = set()
    for key, _ in pairs:
        if key in seen:
            raise DocumentFormatError(f"duplicate key {key!r}")
        seen.add(key)
    return dict(pairs)


def parse_document(text: str) -> DomDocument:
    """Parse a JSON document fixture from a string."""
    try:
        record = json.loads(text, object_pairs_hook=_reject_duplicate_keys)
    except json.JSONDecodeError as exc:
        raise DocumentFormatError(f"invalid document JSON: {exc}") from exc
    return DomDocument(_build(record, "$"))


def load_document(path) -> DomDocument:
    """Load a document fixture file (UTF-8 JSON)."""
    with open(path, encoding="utf-8") as fh:
        return parse_document(fh.read())
