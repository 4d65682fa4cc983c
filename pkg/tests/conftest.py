import itertools

from sidonkit.groups import AbelianGroup


def els(group, *codes):
    """Group elements from indices (rank 1) or coordinate tuples."""
    return [group.element(c) for c in codes]


def brute_sidon(group, idxs):
    """Reference Sidon predicate via all unordered pair sums."""
    items = [group.coords_of(i) for i in idxs]
    sums = [group.add_coords(a, b) for a, b in
            itertools.combinations_with_replacement(items, 2)]
    return len(sums) == len(set(sums))


def cyclic(n):
    return AbelianGroup((n,))
