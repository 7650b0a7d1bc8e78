"""
Partitions of a node set and their coarsenings
"""

from dataclasses import dataclass
from functools import cached_property

from modules.errors import TooManyBlocks, ValidationError

DEFAULT_MAX_BLOCKS = 9


@dataclass(frozen=True)
class Partition:
    """
    A proper partition of `ground_set` into disjoint nonempty blocks.

    Blocks are stored canonically (each block sorted, blocks ordered by
    their smallest element) so two partitions compare equal iff they are
    the same partition.
    """
    ground_set: frozenset
    blocks: tuple

    @classmethod
    def from_blocks(cls, blocks, ground_set=None):
        canon = tuple(sorted((tuple(sorted(b)) for b in blocks), key=lambda b: b[0] if b else -1))
        seen = set()
        for block in canon:
            if not block:
                raise ValidationError("partition has an empty block")
            for v in block:
                if v in seen:
                    raise ValidationError(f"node {v} appears in two blocks")
                seen.add(v)
        if ground_set is None:
            ground_set = frozenset(seen)
        elif frozenset(ground_set) != seen:
            raise ValidationError("blocks do not cover the ground set")
        return cls(frozenset(ground_set), canon)

    def __len__(self):
        return len(self.blocks)

    @cached_property
    def _index(self):
        return {v: i for i, block in enumerate(self.blocks) for v in block}

    def block_index(self):
        """Map node -> index of its block"""
        return self._index

    def crosses(self, a, b):
        """True iff a and b lie in different blocks (False if either is outside)"""
        index = self.block_index()
        if a not in index or b not in index:
            return False
        return index[a] != index[b]

    def is_trivial(self):
        return len(self.blocks) == 1

    def merge(self, groups):
        """Coarsen by merging blocks; `groups` is a list of lists of block indices"""
        return Partition.from_blocks(
            [[v for i in group for v in self.blocks[i]] for group in groups],
            self.ground_set,
        )

    def representatives(self, base):
        """
        Describe this partition as groups of `base` block representatives.

        `base` must refine this partition. Each base block is represented by
        its smallest node; the result is a sorted list of sorted lists.
        """
        index = self.block_index()
        groups = {}
        for block in base.blocks:
            groups.setdefault(index[block[0]], []).append(block[0])
        return sorted(sorted(g) for g in groups.values())

    @classmethod
    def from_representatives(cls, base, groups):
        """Re-expand a representative description against its base partition"""
        rep_block = {block[0]: block for block in base.blocks}
        blocks = []
        used = set()
        for group in groups:
            merged = []
            for rep in group:
                if rep not in rep_block or rep in used:
                    raise ValidationError(f"unknown or repeated block representative {rep}")
                used.add(rep)
                merged.extend(rep_block[rep])
            blocks.append(merged)
        if used != set(rep_block):
            raise ValidationError("representatives do not cover the base partition")
        return cls.from_blocks(blocks, base.ground_set)


def set_partitions(k):
    """
    Yield every partition of range(k) as a restricted growth string
    (labels[i] = block label of item i, labels[0] = 0).
    """
    if k == 0:
        yield ()
        return
    labels = [0] * k

    def extend(i, top):
        if i == k:
            yield tuple(labels)
            return
        for label in range(top + 2):
            labels[i] = label
            yield from extend(i + 1, max(top, label))

    labels[0] = 0
    yield from extend(1, 0)


def enumerate_coarsenings(base, max_blocks=DEFAULT_MAX_BLOCKS):
    """
    Yield every partition obtained by merging blocks of `base`
    (trivial partition first, base itself last), each exactly once.
    """
    if len(base) > max_blocks:
        raise TooManyBlocks(f"{len(base)} blocks exceed the enumeration cap of {max_blocks}")
    for labels in set_partitions(len(base)):
        groups = {}
        for i, label in enumerate(labels):
            groups.setdefault(label, []).append(i)
        yield base.merge(list(groups.values()))


def bell(k):
    """Number of partitions of a k-set"""
    row = [1]
    for _ in range(k):
        nxt = [row[-1]]
        for value in row:
            nxt.append(nxt[-1] + value)
        row = nxt
    return row[0]
