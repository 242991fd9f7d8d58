r"""Transcribed working equations for the particle-hole gamma tensors.

Each entry is ``(family, block, expression)`` with the expression written as
printed in the source tables (Einstein summation over e, f, g and M, N, K when
they are not block labels).  Family codes follow :mod:`duccfold.wick.derive`.

``CORRECTIONS`` lists entries whose printed form disagrees with the Wick
derivation (validated against dense Fock-space operator products).  The
numerical code in :mod:`duccfold.downfold.gamma` follows the corrected form;
``corrected_entries()`` applies the substitutions.
"""
from __future__ import annotations

PRINTED = [
    # bare Hamiltonian
    ("H", r"gamma^B_A", r"f^B_A"),
    ("H", r"gamma^J_I", r"f^J_I"),
    ("H", r"gamma^I_A", r"f^I_A"),
    ("H", r"gamma^A_I", r"f^A_I"),
    ("H", r"gamma^{BC}_{IA}", r"v^{BC}_{IA}"),
    ("H", r"gamma^{KA}_{IJ}", r"v^{KA}_{IJ}"),
    ("H", r"gamma^{CI}_{AB}", r"v^{CI}_{AB}"),
    ("H", r"gamma^{IJ}_{KA}", r"v^{IJ}_{KA}"),
    ("H", r"gamma^{JB}_{IA}", r"v^{JB}_{IA}"),
    ("H", r"gamma^{CD}_{AB}", r"v^{CD}_{AB}"),
    ("H", r"gamma^{KL}_{IJ}", r"v^{KL}_{IJ}"),
    ("H", r"gamma^{IJ}_{AB}", r"v^{IJ}_{AB}"),
    ("H", r"gamma^{AB}_{IJ}", r"v^{AB}_{IJ}"),
    # (H_N T)_C
    ("HT", r"gamma^B_A", r"- f^M_A s^B_M + v^{MB}_{eA} s^e_M -\frac{1}{2} v^{MN}_{eA} s^{eB}_{MN}"),
    ("HT", r"gamma^J_I", r"f^J_e s^e_I + v^{MJ}_{eI} s^e_M +\frac{1}{2}v^{MJ}_{ef} s^{ef}_{MI}"),
    ("HT", r"gamma^I_A", r"v^{MI}_{eA} s^e_M"),
    ("HT", r"gamma^A_I",
     r"f^A_e s^e_I -f^M_I s^A_M + v^{MA}_{eI} s^e_M + f^M_e t^{eA}_{MI}"
     r" -\frac{1}{2} v^{MN}_{eI} s^{eA}_{MN} + \frac{1}{2} v^{MA}_{ef} s^{ef}_{MI}"),
    ("HT", r"gamma^{BC}_{IA}",
     r"v^{BC}_{eA}s^{e}_{I} - v^{MB}_{AI} s^{C}_{M} + v^{MC}_{AI} s^{B}_{M} + f^{M}_{A}s^{BC}_{MI}"
     r" - v^{MB}_{eA} s^{eC}_{MI}+v^{MC}_{eA} s^{eB}_{MI} +\frac{1}{2} v^{MN}_{IA}s^{BC}_{MN}"),
    ("HT", r"gamma^{KA}_{IJ}",
     r"v^{KA}_{eJ} s^{e}_{I} -v^{KA}_{eI} s^{e}_{J} +v^{MK}_{IJ} s^{A}_{M} + f^{K}_{e}  s^{eA}_{IJ}"
     r" +\frac{1}{2} v^{KA}_{ef} s^{ef}_{IJ} -v^{MK}_{eJ} s^{eA}_{MI} + v^{MK}_{eI} s^{eA}_{MJ}"),
    ("HT", r"gamma^{CI}_{AB}", r"- v^{MI}_{AB} s^{C}_{M}"),
    ("HT", r"gamma^{IJ}_{KA}", r"v^{IJ}_{eA}s^{e}_{K}"),
    ("HT", r"gamma^{JB}_{IA}", r"v^{JB}_{eA}s^{e}_{I}+v^{MJ}_{IA}s^{B}_{M}-v^{MJ}_{eA}s^{eB}_{MI}"),
    ("HT", r"gamma^{CD}_{AB}", r"v^{MC}_{AB}s^{D}_{M}-v^{MD}_{AB}s^{C}_{M} +\frac{1}{2}v^{MN}_{AB} s^{CD}_{MN}"),
    ("HT", r"gamma^{KL}_{IJ}", r"v^{KL}_{eJ} s^{e}_{I} - v^{KL}_{eI} s^{e}_{J} +\frac{1}{2} v^{KL}_{ef} s^{ef}_{IJ}"),
    ("HT", r"gamma^{AB}_{IJ}",
     r"v^{AB}_{eJ} s^{e}_{I} - v^{AB}_{eI} s^{e}_{J} + v^{MA}_{IJ} s^{B}_{M} -v^{MB}_{IJ} s^{A}_{M}"
     r" + f^{A}_{e} s^{eB}_{IJ} - f^{B}_{e} s^{eA}_{IJ}  + f^{M}_{J} s^{AB}_{MI} -f^{M}_{I} s^{AB}_{MJ}"
     r" +\frac{1}{2} v^{AB}_{ef} s^{ef}_{IJ} + \frac{1}{2} v^{MN}_{IJ} s^{AB}_{MN}-v^{MA}_{eJ} s^{eB}_{MI}"
     r" + v^{MA}_{eI} s^{eB}_{MJ}+v^{MB}_{eJ} s^{eA}_{MI} - v^{MB}_{eI} s^{eA}_{MJ}"),
    # (T^+ H_N)_C
    ("TH", r"gamma^A_B", r"- f^A_M s^M_B + v^{eA}_{MB} s^M_e-\frac{1}{2} v^{eA}_{MN} s^{MN}_{eB}"),
    ("TH", r"gamma^I_J", r"f^e_J s^I_e+ v^{eI}_{MJ} s^e_M + \frac{1}{2} v^{ef}_{MJ} s^{MI}_{ef}"),
    ("TH", r"gamma^A_I", r"v^{eA}_{MI} s^e_M"),
    ("TH", r"gamma^I_A",
     r"f^e_A s^I_e - f^I_M s^M_A + v^{eI}_{MA} s^e_M+ f^e_M s^{MI}_{eA}"
     r" -\frac{1}{2} v^{eI}_{MN} s^{MN}_{eA} + \frac{1}{2} v^{ef}_{MA} s^{MI}_{ef}"),
    ("TH", r"gamma^{IA}_{BC}",
     r"v^{eA}_{BC} s^I_e - v^{AI}_{MB} s^M_C + v^{AI}_{MC} s^M_B + f^A_M s^{MI}_{BC}"
     r" -v^{eA}_{MB} s^{MI}_{eC} + v^{eA}_{MC} s^{MI}_{eB} + \frac{1}{2} v^{IA}_{MN} s^{MN}_{BC}"),
    ("TH", r"gamma^{IJ}_{KA}",
     r"v_{KA}^{eJ} s_{e}^{I} -v_{KA}^{eI} s_{e}^{J} +v_{MK}^{IJ} s_{A}^{M} + f_{K}^{e}  s_{eA}^{IJ}"
     r" +\frac{1}{2} v_{KA}^{ef} s_{ef}^{IJ} -v_{MK}^{eJ} s_{eA}^{MI} + v_{MK}^{eI} s_{eA}^{MJ}"),
    ("TH", r"gamma_{CI}^{AB}", r"- v_{MI}^{AB} s_{C}^{M}"),
    ("TH", r"gamma_{IJ}^{KA}", r"v_{IJ}^{eA}s_{e}^{K}"),
    ("TH", r"gamma_{JB}^{IA}", r"v_{JB}^{eA}s_{e}^{I}+v_{MJ}^{IA}s_{B}^{M}-v_{MJ}^{eA}s_{eB}^{MI}"),
    ("TH", r"gamma_{CD}^{AB}", r"v_{MC}^{AB}s_{D}^{M}-v_{MD}^{AB}s_{C}^{M} +\frac{1}{2}v_{MN}^{AB} s_{CD}^{MN}"),
    ("TH", r"gamma_{KL}^{IJ}", r"v_{KL}^{eJ} s_{e}^{I} - v_{KL}^{eI} s_{e}^{J} +\frac{1}{2} v_{KL}^{ef} s_{ef}^{IJ}"),
    ("TH", r"gamma_{AB}^{IJ}",
     r"v_{AB}^{eJ} s_{e}^{I} - v_{AB}^{eI} s_{e}^{J} + v_{MA}^{IJ} s_{B}^{M} -v_{MB}^{IJ} s_{A}^{M}"
     r" + f_{A}^{e} s_{eB}^{IJ} - f_{B}^{e} s_{eA}^{IJ}  + f_{M}^{J} s_{AB}^{MI} -f_{M}^{I} s_{AB}^{MJ}"
     r" +\frac{1}{2} v_{AB}^{ef} s_{ef}^{IJ} + \frac{1}{2} v_{MN}^{IJ} s_{AB}^{MN}-v_{MA}^{eJ} s_{eB}^{MI}"
     r" + v_{MA}^{eI} s_{eB}^{MJ}+v_{MB}^{eJ} s_{eA}^{MI} - v_{MB}^{eI} s_{eA}^{MJ}"),
    # 1/2 (T^+ (F_N T)_C)_C
    ("TFT", r"gamma^J_I",
     r"\frac{1}{2} s^{J}_{e} f^{e}_{f} s^{f}_{I} - \frac{1}{2} s^M_e f^J_M s^e_I"
     r" - \frac{1}{4} s^{MJ}_{ef} f^{N}_{I} s^{ef}_{MN} +  \frac{1}{2} s^{MJ}_{eg} f^{e}_{f} s^{fg}_{MI}"
     r" + \frac{1}{4} s^{IM}_{ef} f^{N}_{M} s^{ef}_{NJ}"),
    ("TFT", r"gamma^A_B",
     r"\frac{1}{2} s^{M}_{B} f^{N}_{M} s^{A}_{N} - \frac{1}{2} s^{M}_e f^e_B s^A_M"
     r" + \frac{1}{4} s^{MN}_{fB}  f^{A}_{e} s^{ef}_{MN} + \frac{1}{4} s^{MN}_{eB} f^{e}_{f} s^{Af}_{MN}"
     r" - \frac{1}{2} s^{MK}_{eB} f^{N}_{K} s^{eA}_{NM}"),
    ("TFT", r"gamma^A_I",
     r"\frac{1}{2} s^{M}_{e} f^{A}_{f} s^{ef}_{MI} - \frac{1}{2} s^{M}_{e} f^{N}_{I} s^{eA}_{MN}"
     r" - \frac{1}{2} s^{M}_{e} f^{N}_{M} s^{Ae}_{IN} + \frac{1}{2} s^{M}_{e} f^{e}_{f} s^{Af}_{IM}"),
    ("TFT", r"gamma^{IJ}_{KL}",
     r"\frac{1}{4} s^{IJ}_{ef} f^{M}_{L} s^{ef}_{MK} - \frac{1}{4} s^{IJ}_{ef} f^{M}_{K} s^{ef}_{ML}"
     r" + \frac{1}{2} s^{IJ}_{eg} f^{e}_{f} s^{fg}_{KL}"),
    ("TFT", r"gamma^{IA}_{JB}",
     r"\frac{1}{2} s^{MI}_{eB} f^{N}_{J} s^{eA}_{MN} - \frac{1}{2} s^{MI}_{eB} f^{A}_{f} s^{ef}_{MJ}"
     r" - \frac{1}{2} s^{MI}_{eB} f^{e}_{f} s^{fA}_{MJ} + \frac{1}{2} s^{MI}_{eB} f^{N}_{M} s^{eA}_{NJ}"),
    ("TFT", r"gamma^{AB}_{CD}",
     r"\frac{1}{4} s^{MN}_{CD} f^{A}_{e} s^{eB}_{MN} - \frac{1}{4} s^{MN}_{CD} f^{B}_{e} s^{eA}_{MN}"
     r" - \frac{1}{2} s^{MK}_{CD} f^{N}_{M} s^{AB}_{NK}"),
    ("TFT", r"gamma^{IJ}_{KA}", r"- \frac{1}{2} s^{IJ}_{eA} f^{M}_{K} s^{e}_{M}"),
    ("TFT", r"gamma^{CI}_{AB}", r"- \frac{1}{2} s^{MI}_{AB} f^{C}_{e} s^{e}_{M}"),
    ("TFT", r"gamma^{KA}_{IJ}",
     r"\frac{1}{2} s^{K}_{e} f^{e}_{f} s^{fA}_{IJ} - \frac{1}{2} s^{K}_{e} f^{M}_{J} s^{eA}_{IM}"
     r" + \frac{1}{2} s^{K}_{e} f^{M}_{I} s^{eA}_{JM} + \frac{1}{2} s^{K}_{e} f^{A}_{f} s^{ef}_{IJ}"),
    ("TFT", r"gamma^{AB}_{CI}",
     r"\frac{1}{2} s^{M}_{C} f^{N}_{M} s^{AB}_{NI} - \frac{1}{2} s^{M}_{C} f^{B}_{e} s^{eA}_{IM}"
     r" + \frac{1}{2} s^{M}_{C} f^{A}_{e} s^{eB}_{IM} + \frac{1}{2} s^{M}_{C} f^{N}_{I} s^{AB}_{MN}"),
    # 1/2 ((T^+ F_N)_C T)_C
    ("TFT2", r"gamma_J^I",
     r"\frac{1}{2} s_{J}^{e} f_{e}^{f} s_{f}^{I} - \frac{1}{2} s_M^e f_J^M s_e^I"
     r" - \frac{1}{4} s_{MJ}^{ef} f_{N}^{I} s_{ef}^{MN} +  \frac{1}{2} s_{MJ}^{eg} f_{e}^{f} s_{fg}^{MI}"
     r" + \frac{1}{4} s_{IM}^{ef} f_{N}^{M} s_{ef}^{NJ}"),
    ("TFT2", r"gamma_A^B",
     r"\frac{1}{2} s_{M}^{B} f_{N}^{M} s_{A}^{N} - \frac{1}{2} s_{M}^e f_e^B s_A^M"
     r" + \frac{1}{4} s_{MN}^{fB}  f_{A}^{e} s_{ef}^{MN} + \frac{1}{4} s_{MN}^{eB} f_{e}^{f} s_{Af}^{MN}"
     r" - \frac{1}{2} s_{MK}^{eB} f_{N}^{K} s_{eA}^{NM}"),
    ("TFT2", r"gamma_A^I",
     r"\frac{1}{2} s_{M}^{e} f_{A}^{f} s_{ef}^{MI} - \frac{1}{2} s_{M}^{e} f_{N}^{I} s_{eA}^{MN}"
     r" - \frac{1}{2} s_{M}^{e} f_{N}^{M} s_{Ae}^{IN} + \frac{1}{2} s_{M}^{e} f_{e}^{f} s_{Af}^{IM}"),
    ("TFT2", r"gamma_{IJ}^{KL}",
     r"\frac{1}{4} s_{IJ}^{ef} f_{M}^{L} s_{ef}^{MK} - \frac{1}{4} s_{IJ}^{ef} f_{M}^{K} s_{ef}^{ML}"
     r" + \frac{1}{2} s_{IJ}^{eg} f_{e}^{f} s_{fg}^{KL}"),
    ("TFT2", r"gamma_{IA}^{JB}",
     r"\frac{1}{2} s_{MI}^{eB} f_{N}^{J} s_{eA}^{MN} - \frac{1}{2} s_{MI}^{eB} f_{A}^{f} s_{ef}^{MJ}"
     r" - \frac{1}{2} s_{MI}^{eB} f_{e}^{f} s_{fA}^{MJ} + \frac{1}{2} s_{MI}^{eB} f_{N}^{M} s_{eA}^{NJ}"),
    ("TFT2", r"gamma_{AB}^{CD}",
     r"\frac{1}{4} s_{MN}^{CD} f_{A}^{e} s_{eB}^{MN} - \frac{1}{4} s_{MN}^{CD} f_{B}^{e} s_{eA}^{MN}"
     r" - \frac{1}{2} s_{MK}^{CD} f_{N}^{M} s_{AB}^{NK}"),
    ("TFT2", r"gamma_{IJ}^{KA}", r"- \frac{1}{2} s_{IJ}^{eA} f_{M}^{K} s_{e}^{M}"),
    ("TFT2", r"gamma_{CI}^{AB}", r"- \frac{1}{2} s_{MI}^{AB} f_{C}^{e} s_{e}^{M}"),
    ("TFT2", r"gamma_{KA}^{IJ}",
     r"\frac{1}{2} s_{K}^{e} f_{e}^{f} s_{fA}^{IJ} - \frac{1}{2} s_{K}^{e} f_{M}^{J} s_{eA}^{IM}"
     r" + \frac{1}{2} s_{K}^{e} f_{M}^{I} s_{eA}^{JM} + \frac{1}{2} s_{K}^{e} f_{A}^{f} s_{ef}^{IJ}"),
    ("TFT2", r"gamma_{AB}^{CI}",
     r"\frac{1}{2} s_{M}^{C} f_{N}^{M} s_{AB}^{NI} - \frac{1}{2} s_{M}^{C} f_{B}^{e} s_{eA}^{IM}"
     r" + \frac{1}{2} s_{M}^{C} f_{A}^{e} s_{eB}^{IM} + \frac{1}{2} s_{M}^{C} f_{N}^{I} s_{AB}^{MN}"),
]

# (family, block) -> corrected expression; filled in from the derivation
CORRECTIONS = {
    ("HT", r"gamma^A_I"):
        r"f^A_e s^e_I -f^M_I s^A_M + v^{MA}_{eI} s^e_M + f^M_e s^{eA}_{MI}"
        r" -\frac{1}{2} v^{MN}_{eI} s^{eA}_{MN} + \frac{1}{2} v^{MA}_{ef} s^{ef}_{MI}",
    ("TFT", r"gamma^J_I"):
        r"\frac{1}{2} s^{J}_{e} f^{e}_{f} s^{f}_{I} - \frac{1}{2} s^J_e f^M_I s^e_M"
        r" - \frac{1}{4} s^{MJ}_{ef} f^{N}_{I} s^{ef}_{MN} +  \frac{1}{2} s^{MJ}_{eg} f^{e}_{f} s^{fg}_{MI}"
        r" + \frac{1}{4} s^{IM}_{ef} f^{N}_{M} s^{ef}_{NJ}",
    ("TFT", r"gamma^A_B"):
        r"\frac{1}{2} s^{M}_{B} f^{N}_{M} s^{A}_{N} - \frac{1}{2} s^M_B f^A_e s^e_M"
        r" + \frac{1}{4} s^{MN}_{fB}  f^{A}_{e} s^{ef}_{MN} + \frac{1}{4} s^{MN}_{eB} f^{e}_{f} s^{Af}_{MN}"
        r" - \frac{1}{2} s^{MK}_{eB} f^{N}_{K} s^{eA}_{NM}",
    ("TFT", r"gamma^{IJ}_{KA}"):
        r"- \frac{1}{2} s^{IJ}_{eA} f^{M}_{K} s^{e}_{M} + \frac{1}{2} s^{IJ}_{eA} f^e_f s^f_K",
    ("TFT", r"gamma^{CI}_{AB}"):
        r"- \frac{1}{2} s^{MI}_{AB} f^{C}_{e} s^{e}_{M} + \frac{1}{2} s^{MI}_{AB} f^N_M s^C_N",
    ("TFT2", r"gamma_J^I"):
        r"\frac{1}{2} s_{J}^{e} f_{e}^{f} s_{f}^{I} - \frac{1}{2} s_J^e f_M^I s_e^M"
        r" - \frac{1}{4} s_{MJ}^{ef} f_{N}^{I} s_{ef}^{MN} +  \frac{1}{2} s_{MJ}^{eg} f_{e}^{f} s_{fg}^{MI}"
        r" + \frac{1}{4} s_{IM}^{ef} f_{N}^{M} s_{ef}^{NJ}",
    ("TFT2", r"gamma_A^B"):
        r"\frac{1}{2} s_{M}^{B} f_{N}^{M} s_{A}^{N} - \frac{1}{2} s_B^M f_A^e s_e^M"
        r" + \frac{1}{4} s_{MN}^{fB}  f_{A}^{e} s_{ef}^{MN} + \frac{1}{4} s_{MN}^{eB} f_{e}^{f} s_{Af}^{MN}"
        r" - \frac{1}{2} s_{MK}^{eB} f_{N}^{K} s_{eA}^{NM}",
    ("TFT2", r"gamma_{IJ}^{KA}"):
        r"- \frac{1}{2} s_{IJ}^{eA} f_{M}^{K} s_{e}^{M} + \frac{1}{2} s_{IJ}^{eA} f_e^f s_f^K",
    ("TFT2", r"gamma_{CI}^{AB}"):
        r"- \frac{1}{2} s_{MI}^{AB} f_{C}^{e} s_{e}^{M} + \frac{1}{2} s_{MI}^{AB} f_N^M s_C^N",
}

# blocks produced by the derivation but absent from the printed tables
ADDED = [
    ("TFT", r"gamma^I_A",
     r"- \frac{1}{2} s^{IM}_{Ae} f^N_M s^e_N + \frac{1}{2} s^{IM}_{Ae} f^e_f s^f_M"),
    ("TFT2", r"gamma_I^A",
     r"- \frac{1}{2} s_{IM}^{Ae} f_N^M s_e^N + \frac{1}{2} s_{IM}^{Ae} f_e^f s_f^M"),
]

# short descriptions used in the derivation report
DISCREPANCIES = {
    ("HT", r"gamma^A_I"): "amplitude written as t; it is the external s like every other term",
    ("TFT", r"gamma^J_I"): "second term has I and J interchanged; correct form is -1/2 s^J_e f^M_I s^e_M",
    ("TFT", r"gamma^A_B"): "second term has A and B interchanged; correct form is -1/2 s^M_B f^A_e s^e_M",
    ("TFT", r"gamma^{IJ}_{KA}"): "missing +1/2 s^{IJ}_{eA} f^e_f s^f_K",
    ("TFT", r"gamma^{CI}_{AB}"): "missing +1/2 s^{MI}_{AB} f^N_M s^C_N",
    ("TFT2", r"gamma_J^I"): "conjugate of the gamma^J_I index interchange",
    ("TFT2", r"gamma_A^B"): "conjugate of the gamma^A_B index interchange",
    ("TFT2", r"gamma_{IJ}^{KA}"): "missing +1/2 s_{IJ}^{eA} f_e^f s_f^K",
    ("TFT2", r"gamma_{CI}^{AB}"): "missing +1/2 s_{MI}^{AB} f_N^M s_C^N",
    ("TFT", r"gamma^I_A"): "block absent from the table",
    ("TFT2", r"gamma_I^A"): "block absent from the table",
}


def corrected_entries():
    return [(fam, blk, CORRECTIONS.get((fam, blk), expr)) for fam, blk, expr in PRINTED] + list(ADDED)
