"""Substitution automaton for pulling factors back through the embedding.

The automaton scans a bivariate word left to right, matching occurrences
of the embedding words v_i; completing a v_i emits the variable x_i.  A
word reaches the accept state with nonzero output exactly when it is a
concatenation of embedding words, so the tensor words of an image
monomial that involve a mirrored factor never land there (a mirrored
factor starts with y, which nothing matches).  The per-letter transition
matrices turn that scan into a matrix substitution: entry (q0, qf) of
g'(M_x, M_y) is the nonconstant part of the preimage g, and entry
(q0, q0) holds the constant term (q0 has no incoming transitions).
"""

from __future__ import annotations

from ncfactor.circuits import Abp, Circuit, CircuitBuilder, MatrixAssignment, circuit_from_poly
from ncfactor.matrix import Matrix
from ncfactor.ncpoly import Alphabet, NcPoly, X, Y

OUT_ZERO = 0
OUT_ONE = 1


class SubstAutomaton:
    """Deterministic automaton with per-transition outputs in X u {0, 1}.

    States: 0 = q0 (start, no incoming transitions), 1 = trie root,
    2..  = deeper trie states, then qf (accept) and qr (absorbing reject).
    Outputs are encoded as 0, 1, or ("var", i).
    """

    __slots__ = ("wordset", "n_states", "q0", "root", "qf", "qr", "delta")

    def __init__(self, wordset, n_trie_states, delta):
        self.wordset = wordset
        self.n_states = n_trie_states + 3
        self.q0 = 0
        self.root = 1
        self.qf = n_trie_states + 1
        self.qr = n_trie_states + 2
        self.delta = delta

    @property
    def n_vars(self):
        return self.wordset.n

    def step(self, state, letter):
        return self.delta[(state, letter)]

    def run(self, word):
        """Scan a word from q0: (end state, scalar, emitted variable word).

        The scalar is 0 exactly when some transition output 0 on the way.
        """
        state = self.q0
        emitted = []
        dead = False
        for letter in word:
            state, out = self.delta[(state, letter)]
            if out == OUT_ZERO:
                dead = True
            elif out != OUT_ONE:
                emitted.append(out[1])
        if dead:
            return state, 0, ()
        return state, 1, tuple(emitted)


def build_automaton(wordset):
    """Trie-based construction over the words stripped of their first and
    last letters.

    For uniform-length word sets this is exactly the textbook automaton;
    with mixed lengths a state can be both the accept point of a shorter
    word and interior to a longer one.  Reading y there closes the
    shorter word (a balanced prefix of a Dyck continuation cannot be
    followed by y), reading x walks deeper, so determinism survives.
    """
    middles = [w[1:-1] for w in wordset.words]
    # trie over the middles; root = state 1, q0 = 0
    children = {}
    accept = {}
    next_state = 2
    for i, mid in enumerate(middles):
        node = 1
        for letter in mid:
            key = (node, letter)
            if key not in children:
                children[key] = next_state
                next_state += 1
            node = children[key]
        assert node not in accept, "duplicate middles cannot happen"
        accept[node] = i

    # states: q0 = 0, trie = 1..next_state-1, then qf, qr
    qf = next_state
    qr = next_state + 1

    delta = {}
    delta[(0, X)] = (1, OUT_ONE)
    delta[(0, Y)] = (qr, OUT_ZERO)
    for node in range(1, next_state):
        for letter in (X, Y):
            child = children.get((node, letter))
            if letter == Y and node in accept:
                assert child is None, "y-continuation past an accept point"
                delta[(node, letter)] = (qf, ("var", accept[node]))
            elif child is not None:
                delta[(node, letter)] = (child, OUT_ONE)
            else:
                delta[(node, letter)] = (qr, OUT_ZERO)
    delta[(qf, X)] = (1, OUT_ONE)
    delta[(qf, Y)] = (qr, OUT_ZERO)
    delta[(qr, X)] = (qr, OUT_ZERO)
    delta[(qr, Y)] = (qr, OUT_ZERO)

    return SubstAutomaton(wordset, next_state - 1, delta)


class TransitionMatrices:
    """Per-letter matrices with entries in {0, 1} u X (0 = no transition
    or zero output); at most one nonzero entry per row per letter."""

    __slots__ = ("mx", "my", "n_states")

    def __init__(self, automaton):
        n = automaton.n_states
        self.n_states = n
        self.mx = [[OUT_ZERO] * n for _ in range(n)]
        self.my = [[OUT_ZERO] * n for _ in range(n)]
        for (state, letter), (nxt, out) in automaton.delta.items():
            if out == OUT_ZERO:
                continue
            target = self.mx if letter == X else self.my
            target[state][nxt] = out

    def for_letter(self, letter):
        return self.mx if letter == X else self.my


def transition_matrices(automaton):
    return TransitionMatrices(automaton)


def recover_circuit(c, automaton):
    """Symbolic matrix evaluation of a bivariate circuit at (M_x, M_y).

    Each gate becomes a sparse grid of gates over x_1..x_n indexed by
    state pairs; the output is entry (q0, qf) plus the constant-carrying
    entry (q0, q0).  Grid entries that are structurally zero are never
    materialized, and the result is pruned to gates reachable from the
    output.
    """
    tm = transition_matrices(automaton)
    nq = automaton.n_states
    field = c.field
    out_alphabet = Alphabet.nvars(automaton.n_vars)
    b = CircuitBuilder(out_alphabet, field)
    one_gate = b.const(field.one)

    def entry_gate(e):
        if e == OUT_ZERO:
            return None
        if e == OUT_ONE:
            return one_gate
        return b.var(e[1])

    def mul_gates(g1, g2):
        if g1 == one_gate:
            return g2
        if g2 == one_gate:
            return g1
        return b.mul(g1, g2)

    grids = []
    for g in c.gates:
        kind = g[0]
        if kind == "var":
            m = tm.for_letter(g[1])
            grid = {}
            for i in range(nq):
                for j in range(nq):
                    gate = entry_gate(m[i][j])
                    if gate is not None:
                        grid[(i, j)] = gate
        elif kind == "const":
            grid = {}
            if g[1] != field.zero:
                cg = b.const(g[1])
                grid = {(i, i): cg for i in range(nq)}
        elif kind == "add":
            a, bb_ = grids[g[1]], grids[g[2]]
            grid = dict(a)
            for key, gate in bb_.items():
                grid[key] = b.add(grid[key], gate) if key in grid else gate
        else:  # mul: sparse grid product
            a, bb_ = grids[g[1]], grids[g[2]]
            rows = {}
            for (k, j), gate in bb_.items():
                rows.setdefault(k, []).append((j, gate))
            grid = {}
            for (i, k), ga in a.items():
                for j, gb in rows.get(k, ()):
                    prod = mul_gates(ga, gb)
                    key = (i, j)
                    grid[key] = b.add(grid[key], prod) if key in grid else prod
        grids.append(grid)

    out_grid = grids[c.output]
    parts = [out_grid[key] for key in ((automaton.q0, automaton.qf),
                                       (automaton.q0, automaton.q0))
             if key in out_grid]
    if not parts:
        out = b.const(field.zero)
    elif len(parts) == 1:
        out = parts[0]
    else:
        out = b.add(parts[0], parts[1])
    return b.build(out).pruned()


def _blown_label(label, q1, q2, tm, out_alphabet):
    """Entry (q1, q2) of c0*I + cx*M_x + cy*M_y as an affine label over X."""
    field = label.field
    terms = []
    c0 = label.coeff(())
    if q1 == q2 and c0 != field.zero:
        terms.append(((), c0))
    for letter in (X, Y):
        coeff = label.coeff((letter,))
        if coeff == field.zero:
            continue
        e = tm.for_letter(letter)[q1][q2]
        if e == OUT_ZERO:
            continue
        if e == OUT_ONE:
            terms.append(((), coeff))
        else:
            terms.append(((e[1],), coeff))
    return NcPoly(out_alphabet, field, terms)


def recover_abp(p, automaton):
    """Block construction: node u becomes (u, q) for every state q; one
    extra layer collects (sink, qf) and (sink, q0) with unit edges."""
    tm = transition_matrices(automaton)
    nq = automaton.n_states
    field = p.field
    out_alphabet = Alphabet.nvars(automaton.n_vars)
    q0, qf = automaton.q0, automaton.qf

    sizes = [1]
    sizes.extend(s * nq for s in p.layer_sizes[1:])
    sizes.append(1)
    edges = [dict() for _ in range(len(p.layer_sizes))]

    for k, block in enumerate(p.edges):
        first = (k == 0)
        for (u, v), label in block.items():
            qs = (q0,) if first else range(nq)
            for q1 in qs:
                src = 0 if first else u * nq + q1
                for q2 in range(nq):
                    lbl = _blown_label(label, q1, q2, tm, out_alphabet)
                    if lbl.is_zero():
                        continue
                    key = (src, v * nq + q2)
                    prev = edges[k].get(key)
                    edges[k][key] = lbl if prev is None else prev + lbl
    one = NcPoly.one(out_alphabet, field)
    edges[-1][(0 * nq + qf, 0)] = one
    edges[-1][(0 * nq + q0, 0)] = one
    return Abp(out_alphabet, field, sizes, edges)


def recover_blackbox(bb, automaton, field):
    """Given a black-box for an embedded polynomial, return one for its
    preimage: blow each input T_i up to (|Q|*N) x (|Q|*N) block matrices
    patterned on M_x / M_y and read off blocks (q0,qf) + (q0,q0)."""
    tm = transition_matrices(automaton)
    nq = automaton.n_states
    q0, qf = automaton.q0, automaton.qf
    bivariate = Alphabet.bivariate()

    def big_matrix(m, assignment):
        n = assignment.dim
        zero = field.zero
        rows = [[zero] * (nq * n) for _ in range(nq * n)]
        for i in range(nq):
            for j in range(nq):
                e = m[i][j]
                if e == OUT_ZERO:
                    continue
                block = (Matrix.identity(field, n) if e == OUT_ONE
                         else assignment.mats[e[1]])
                for r in range(n):
                    for c in range(n):
                        rows[i * n + r][j * n + c] = block[r][c]
        return Matrix(field, rows)

    def recovered(assignment):
        n = assignment.dim
        big = MatrixAssignment(bivariate, field,
                               (big_matrix(tm.mx, assignment),
                                big_matrix(tm.my, assignment)))
        value = bb(big)
        out = [[field.zero] * n for _ in range(n)]
        for r in range(n):
            for c in range(n):
                out[r][c] = (value[q0 * n + r][qf * n + c]
                             + value[q0 * n + r][q0 * n + c])
        return Matrix(field, out)

    return recovered


def reduce_and_recover(c, embedding, oracle):
    """The full white-box pipeline: embed the circuit, hand the expanded
    bivariate image to the factorization oracle, and pull each factor of
    the first factorization back through the automaton.

    Returns circuits over x_1..x_n whose expanded product is the input
    polynomial; the factors inherit irreducibility from the bivariate
    side.
    """
    from ncfactor.embedding import phi_circuit

    embedded = phi_circuit(c, embedding)
    image = embedded.expand()
    tree = oracle(image)
    if not tree.factorizations:
        raise ValueError("oracle returned no factorization")
    scalar, factors = tree.factorizations[0]
    automaton = build_automaton(embedding.wordset)
    out = []
    for idx, factor in enumerate(factors):
        poly = factor if idx or scalar == c.field.one else factor.scale(scalar)
        out.append(recover_circuit(circuit_from_poly(poly), automaton))
    if not factors:
        out.append(circuit_from_poly(NcPoly.constant(
            Alphabet.nvars(embedding.n), c.field, scalar)))
    return out
