"""
Disjoint-set forest over dense integer node ids
"""


class DisjointSet:
    def __init__(self, nodes):
        self.forest = {v: v for v in nodes}
        self.count = len(self.forest)

    def __contains__(self, k):
        return k in self.forest

    def find(self, k):
        # Find the root.
        root = k
        while root != self.forest[root]:
            root = self.forest[root]

        # Path compression.
        node = k
        while node != self.forest[node]:
            self.forest[node], node = root, self.forest[node]

        return root

    def union(self, a, b):
        """Merge the sets of a and b; returns True iff they were separate"""
        root_a = self.find(a)
        root_b = self.find(b)
        if root_a == root_b:
            return False
        # smaller id stays root so block representatives are stable
        if root_b < root_a:
            root_a, root_b = root_b, root_a
        self.forest[root_b] = root_a
        self.count -= 1
        return True

    def same(self, a, b):
        return self.find(a) == self.find(b)

    def groups(self):
        """Current sets as a list of sorted lists, ordered by smallest member"""
        groups = {}
        for v in self.forest:
            groups.setdefault(self.find(v), []).append(v)
        return sorted(sorted(g) for g in groups.values())

    def copy(self):
        clone = DisjointSet(())
        clone.forest = dict(self.forest)
        clone.count = self.count
        return clone
