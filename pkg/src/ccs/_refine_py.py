"""Pure-Python coarsest stable partition (Kanellakis-Smolka splitting).

Mirror of ``_refine.pyx``; both must return identical block ids.
"""

from __future__ import annotations


def refine(num_states, edges, initial=None):
    """Return block ids of the coarsest partition stable under ``edges``.

    ``edges`` is a sequence of ``(src, action, dst)`` with integer actions
    in ``range(num_actions)``.  ``initial`` optionally seeds the partition.
    Blocks are numbered by their minimum state id, so the result is
    independent of splitting order.
    """
    n = num_states
    if n == 0:
        return []
    block = list(initial) if initial is not None else [0] * n
    block = _normalise(block)
    nblocks = max(block) + 1
    size = [0] * (n + 1)
    for b in block:
        size[b] += 1

    by_action: dict[int, list[tuple[int, int]]] = {}
    for s, a, t in edges:
        by_action.setdefault(a, []).append((s, t))
    actions = sorted(by_action)

    mark = [0] * n
    cnt = [0] * (n + 1)
    newid = [-1] * (n + 1)
    stamp = 0
    changed = True
    while changed:
        changed = False
        for a in actions:
            pairs = by_action[a]
            splitter = 0
            while splitter < nblocks:
                stamp += 1
                marked = []
                for s, t in pairs:
                    if block[t] == splitter and mark[s] != stamp:
                        mark[s] = stamp
                        marked.append(s)
                if marked:
                    touched = []
                    for s in marked:
                        c = block[s]
                        if cnt[c] == 0:
                            touched.append(c)
                        cnt[c] += 1
                    split = False
                    for c in touched:
                        if cnt[c] < size[c]:
                            newid[c] = nblocks
                            size[nblocks] = cnt[c]
                            size[c] -= cnt[c]
                            nblocks += 1
                            split = True
                    if split:
                        changed = True
                        for s in marked:
                            c = block[s]
                            if newid[c] >= 0:
                                block[s] = newid[c]
                    for c in touched:
                        cnt[c] = 0
                        newid[c] = -1
                splitter += 1
    return _normalise(block)


def _normalise(block):
    remap = {}
    out = []
    for b in block:
        if b not in remap:
            remap[b] = len(remap)
        out.append(remap[b])
    return out
