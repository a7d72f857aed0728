#!/usr/bin/env python3
"""Regenerates the JSON system fixtures in this directory.

A fixture is a conceptual-variable system: a finite point space, a
permutation group with explicit compose/act tables, e-variables given by
value assignments, connector elements transporting one variable into
another, and (optionally) explicit component groups. Everything the C++
loader validates is asserted here first, so the shipped files stay
self-consistent and the encodings are reproducible.

Table conventions (0-based, row-major):
  compose[i][j] = index of elements[i] applied after elements[j]
  act[i][p]     = image of point p under elements[i]
Element ids are one-line permutation strings ("1230" maps 0->1,1->2,2->3,3->0).
"""

import itertools
import json
import os

HERE = os.path.dirname(os.path.abspath(__file__))


def perm_id(p):
    return "".join(str(x) for x in p)


def compose(g, h):
    # apply h first, then g
    return tuple(g[h[p]] for p in range(len(h)))


def closure(generators, n_points):
    identity = tuple(range(n_points))
    elems = {identity}
    frontier = [identity] + [tuple(g) for g in generators]
    elems.update(frontier)
    grew = True
    while grew:
        grew = False
        current = list(elems)
        for a in current:
            for b in current:
                c = compose(a, b)
                if c not in elems:
                    elems.add(c)
                    grew = True
    return sorted(elems)


def group_tables(elems):
    index = {e: i for i, e in enumerate(elems)}
    compose_table = [[index[compose(a, b)] for b in elems] for a in elems]
    act_table = [list(e) for e in elems]
    return compose_table, act_table, index


def assert_connector(name_a, var_a, name_b, var_b, k):
    labels_a = [var_a["values"][i] for i in var_a["assign"]]
    labels_b = [var_b["values"][i] for i in var_b["assign"]]
    for p in range(len(k)):
        assert labels_b[p] == labels_a[k[p]], (
            f"connector {name_a}:{name_b} fails at point {p}")


def assert_component_group(var, members, elems):
    """Members must form a subgroup and map the variable's level sets
    onto level sets."""
    mem = set(members)
    assert tuple(range(len(elems[0]))) in mem, "component group lacks identity"
    for g in members:
        assert tuple(g[p] for p in sorted(range(len(g)), key=lambda q: g[q])) \
            or True  # inverses checked via closure below
        for h in members:
            assert compose(g, h) in mem, "component group not closed"
        image = {}
        for p in range(len(g)):
            v = var["assign"][p]
            w = var["assign"][g[p]]
            assert image.setdefault(v, w) == w, \
                "component group member tears a level set apart"


def generated_order(groups, connectors, n_points):
    gens = [g for members in groups for g in members] + list(connectors)
    return len(closure(gens, n_points))


def write_fixture(filename, doc):
    path = os.path.join(HERE, filename)
    with open(path, "w") as f:
        json.dump(doc, f, indent=2)
        f.write("\n")
    print(f"wrote {filename}: |K| = {len(doc['elements'])}, "
          f"variables = {list(doc['variables'])}")


def make_system(name, description, points, elems, variables, connectors=None,
                component_groups=None, theta0=None):
    compose_table, act_table, index = group_tables(elems)
    doc = {
        "schema_version": 1,
        "name": name,
        "description": description,
        "points": points,
        "elements": [perm_id(e) for e in elems],
        "compose": compose_table,
        "act": act_table,
        "variables": variables,
    }
    if connectors:
        doc["connectors"] = {key: perm_id(k) for key, k in connectors.items()}
        for key, k in connectors.items():
            a, b = key.split(":")
            assert_connector(a, variables[a], b, variables[b], k)
            assert tuple(k) in index, "connector must belong to the group"
    if component_groups:
        doc["component_groups"] = {
            name: [perm_id(g) for g in members]
            for name, members in component_groups.items()
        }
        for vname, members in component_groups.items():
            assert_component_group(variables[vname], members, elems)
            for g in members:
                assert tuple(g) in index
    if theta0:
        doc["theta0"] = theta0
    for var in variables.values():
        attained = {var["values"][i] for i in var["assign"]}
        assert attained == set(var["values"]), "unattained value label"
    return doc


def main():
    # --- Z4 shifts on four points, injective designated variable ----------
    shift = (1, 2, 3, 0)
    z4 = closure([shift], 4)
    assert len(z4) == 4
    doc = make_system(
        "z4-injective",
        "Cyclic shifts acting transitively; the designated variable labels "
        "every point, so the function space is the full four-dimensional one.",
        ["0", "1", "2", "3"], z4,
        {"theta0": {"values": ["0", "1", "2", "3"], "assign": [0, 1, 2, 3]}},
        theta0="theta0")
    write_fixture("z4_injective.json", doc)

    # --- Z4 shifts, parity variable plus its shifted relabeling -----------
    doc = make_system(
        "z4-parity",
        "Parity under cyclic shifts, together with the shift-transported "
        "copy; the two variables share level sets with swapped labels.",
        ["0", "1", "2", "3"], z4,
        {
            "parity": {"values": ["+1", "-1"], "assign": [0, 1, 0, 1]},
            "parity_shift": {"values": ["+1", "-1"], "assign": [1, 0, 1, 0]},
        },
        connectors={"parity:parity_shift": shift},
        theta0="parity")
    write_fixture("z4_parity.json", doc)

    # --- Two binary questions on Z2 x Z2 ----------------------------------
    t1 = (2, 3, 0, 1)   # flip first bit (point index = 2*b0 + b1)
    t2 = (1, 0, 3, 2)   # flip second bit
    sw = (0, 2, 1, 3)   # exchange the bits
    d4 = closure([t1, t2, sw], 4)
    assert len(d4) == 8
    doc = make_system(
        "z2xz2-two-question",
        "First and second bit of a two-bit space; the bit exchange connects "
        "them. Each bit's level sets meet the other's evenly, so transported "
        "indicators project onto the uniform vector.",
        ["00", "01", "10", "11"], d4,
        {
            "bit0": {"values": ["0", "1"], "assign": [0, 0, 1, 1]},
            "bit1": {"values": ["0", "1"], "assign": [0, 1, 0, 1]},
        },
        connectors={"bit0:bit1": sw},
        theta0="bit0")
    assert generated_order([], [t1, t2, sw], 4) == 8
    write_fixture("z2xz2_two_question.json", doc)

    # --- Spekkens toy-model questions --------------------------------------
    # Four ontic states, the three canonical binary questions, and the full
    # permutation group declared as the symmetry group. Component groups are
    # the minimal two-element realizations (one block swap per question), so
    # the closure of their union with the connectors is the alternating
    # group: 12 of 24 elements, and the generating assumption fails.
    s4 = sorted(itertools.permutations(range(4)))
    assert len(s4) == 24
    kx = (2, 3, 0, 1)   # swaps the x blocks {0,1} <-> {2,3}
    ky = (1, 0, 3, 2)   # swaps the y blocks {0,2} <-> {1,3}
    kz = (1, 0, 3, 2)   # also swaps the z blocks {0,3} <-> {1,2}
    k_xy = (0, 3, 1, 2)  # even 3-cycle with y = x after transport
    k_xz = (0, 2, 3, 1)
    k_yz = (2, 1, 3, 0)
    identity = (0, 1, 2, 3)
    comp = {"x": [identity, kx], "y": [identity, ky], "z": [identity, kz]}
    doc = make_system(
        "spekkens-questions",
        "The three canonical binary questions on four ontic states with "
        "minimal component-group realizations; the declared symmetry group "
        "is all 24 permutations, of which the questions generate only the "
        "12 even ones.",
        ["1", "2", "3", "4"], s4,
        {
            "x": {"values": ["+1", "-1"], "assign": [0, 0, 1, 1]},
            "y": {"values": ["+1", "-1"], "assign": [0, 1, 0, 1]},
            "z": {"values": ["+1", "-1"], "assign": [0, 1, 1, 0]},
        },
        connectors={"x:y": k_xy, "x:z": k_xz, "y:z": k_yz},
        component_groups=comp,
        theta0="x")
    order = generated_order(comp.values(), [k_xy, k_xz, k_yz], 4)
    assert order == 12, f"expected the alternating group, got order {order}"
    write_fixture("spekkens.json", doc)

    # --- Deliberate question-answer construction violation -----------------
    # Unequal level sets: the singleton level set of the transported variable
    # sits strictly inside a level set of the designated one, so its
    # projected state collapses onto an existing basis vector while the
    # indicators differ.
    doc = make_system(
        "qa-violation",
        "A lopsided binary variable (one point vs three) and its shifted "
        "copy; the construction maps distinct indicators to the same vector.",
        ["0", "1", "2", "3"], z4,
        {
            "t0": {"values": ["0", "1"], "assign": [0, 1, 1, 1]},
            "t1": {"values": ["0", "1"], "assign": [1, 1, 1, 0]},
        },
        connectors={"t0:t1": shift},
        theta0="t0")
    write_fixture("qa_violation.json", doc)

    # --- Reducible block action --------------------------------------------
    # The group permutes points only inside the designated variable's level
    # sets, so the restricted representation is trivial and the group
    # average cannot be proportional to the identity.
    t = (1, 0, 3, 2)
    z2 = closure([t], 4)
    assert len(z2) == 2
    doc = make_system(
        "block-reducible",
        "A two-element group acting within the level sets of the designated "
        "variable; non-transitive, with the level sets as orbits.",
        ["a0", "a1", "b0", "b1"], z2,
        {"theta0": {"values": ["A", "B"], "assign": [0, 0, 1, 1]}},
        theta0="theta0")
    write_fixture("block_reducible.json", doc)


if __name__ == "__main__":
    main()
