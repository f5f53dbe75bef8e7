#!/usr/bin/env python3
# Copyright 2026 The qsd Authors
# SPDX-License-Identifier: Apache-2.0
"""Regenerate the FCIDUMP fixtures under data/ with PySCF (pip install pyscf).

RHF canonical orbitals, CASCI active-space integrals (frozen core folded into
the one-body term and the core energy).  Prints reference energies so the
fixtures can be checked against the values asserted by the test suites.
"""
import sys
from pathlib import Path

import numpy as np
from pyscf import ao2mo, fci, gto, mcscf, scf, tools

DATA = Path(__file__).resolve().parent.parent / "data"


def dump(name, atom, ncas, nelecas, basis="sto-3g"):
    mol = gto.M(atom=atom, basis=basis, unit="Angstrom", verbose=0)
    mf = scf.RHF(mol).run()
    mc = mcscf.CASCI(mf, ncas, nelecas)
    h1, ecore = mc.get_h1eff()
    h2 = ao2mo.restore(1, mc.get_h2eff(), ncas)
    path = DATA / f"{name}.fcidump"
    tools.fcidump.from_integrals(str(path), h1, h2, ncas, nelecas, ecore, tol=1e-15)
    e, c = fci.direct_spin1.kernel(h1, h2, ncas, nelecas, ecore=ecore)
    print(f"{name}: E_HF={mf.e_tot:.8f} E_FCI={e:.8f} HF weight={c[0, 0] ** 2:.6f}")


def main():
    DATA.mkdir(exist_ok=True)
    # Water, O 1s frozen: 8 electrons in 6 spatial orbitals (12 qubits).
    dump("h2o_sto3g_8e6o",
         "O 0.0 0.0 0.1125; H 0.0 0.7938 -0.4500; H 0.0 -0.7938 -0.4500", 6, 8)
    # Small systems for brute-force oracle checks (<= 10 qubits).
    dump("h2_sto3g", "H 0 0 0; H 0 0 0.74", 2, 2)
    dump("h4_chain_sto3g", "H 0 0 0; H 0 0 1.0; H 0 0 2.0; H 0 0 3.0", 4, 4)
    dump("lih_sto3g_2e5o", "Li 0 0 0; H 0 0 1.6", 5, 2)
    return 0


if __name__ == "__main__":
    sys.exit(main())
