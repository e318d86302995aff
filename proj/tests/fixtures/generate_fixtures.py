#!/usr/bin/env python3
"""Regenerate the committed integral fixtures with PySCF.

The test suite never runs this script; it only documents how the files in
this directory were produced.  Usage: python3 generate_fixtures.py [outdir]
"""
import json
import os
import sys

import numpy as np
import pyscf
from pyscf import ao2mo, gto, scf
from pyscf.tools import fcidump


def so_rhf(mol):
    mf = scf.RHF(mol).newton()
    mf.kernel()
    for _ in range(10):
        mo, stable, _, _ = mf.stability(return_status=True)
        if stable:
            break
        mf.kernel(dm0=mf.make_rdm1(mo, mf.mo_occ))
    return mf


def packed8(eri_dense, n):
    out = []
    for i in range(n):
        for j in range(i + 1):
            ij = i * (i + 1) // 2 + j
            for k in range(n):
                for l in range(k + 1):
                    kl = k * (k + 1) // 2 + l
                    if kl > ij:
                        continue
                    out.append(float(eri_dense[i, j, k, l]))
    return out


def export(name, atom, basis, charge, layout, outdir, fcidumps=(), with_c=False):
    mol = gto.M(atom=atom, basis=basis, charge=charge, unit="Angstrom", verbose=0)
    n = mol.nao
    S = mol.intor("int1e_ovlp")
    H = mol.intor("int1e_kin") + mol.intor("int1e_nuc")
    eri = mol.intor("int2e")
    rhf = scf.RHF(mol)
    e_rhf = rhf.kernel()
    so = so_rhf(mol)
    gamma = scf.RHF(mol).get_init_guess(key="atom")
    doc = {
        "format": "scfb-1",
        "m_spatial": n,
        "n_alpha": mol.nelec[0],
        "n_beta": mol.nelec[1],
        "e_nuc": float(mol.energy_nuc()),
        "overlap": [float(x) for x in S.ravel()],
        "hcore": [float(x) for x in H.ravel()],
        "eri": {
            "layout": layout,
            "data": [float(x) for x in eri.ravel()] if layout == "dense" else packed8(eri, n),
        },
        "gamma_init": [float(x) for x in gamma.ravel()],
        "metadata": {
            "molecule": name,
            "geometry_angstrom": atom,
            "basis": basis,
            "charge": str(charge),
            "init_guess": "superposition of atomic densities",
            "rhf_energy": repr(float(e_rhf)),
            "so_rhf_energy": repr(float(so.e_tot)),
            "generator": "pyscf " + pyscf.__version__,
        },
    }
    if with_c:
        doc["c_init"] = [float(x) for x in so.mo_coeff.ravel()]
    path = os.path.join(outdir, name + ".scfb.json")
    with open(path, "w") as f:
        json.dump(doc, f)
    for tag in fcidumps:
        mf = rhf if tag == "rhf" else so
        fcidump.from_scf(mf, os.path.join(outdir, name + "_" + tag + ".fcidump"), tol=1e-14)
    print(name, n, e_rhf, so.e_tot)


def main():
    outdir = sys.argv[1] if len(sys.argv) > 1 else os.path.dirname(os.path.abspath(__file__))
    export("h2_sto3g_0.74", "H 0 0 0; H 0 0 0.74", "sto-3g", 0, "dense", outdir,
           fcidumps=("sorhf",), with_c=True)
    export("oh_minus_631g_3.0", "O 0 0 0; H 0 0 3.0", "6-31g", -1, "dense", outdir,
           fcidumps=("sorhf",))
    export("n2_ccpvdz_1.1", "N 0 0 0; N 0 0 1.1", "cc-pvdz", 0, "packed8", outdir)
    export("n2_ccpvdz_3.0", "N 0 0 0; N 0 0 3.0", "cc-pvdz", 0, "packed8", outdir,
           fcidumps=("rhf",))


if __name__ == "__main__":
    main()
