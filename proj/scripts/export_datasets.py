#!/usr/bin/env python3
"""Export the bundled binary benchmark datasets to CSV (label column "label")."""
import pathlib

import numpy as np
import statsmodels.datasets as smd
from sklearn import datasets

OUT = pathlib.Path(__file__).resolve().parent.parent / "data"


def write(name, X, y, columns):
    OUT.mkdir(exist_ok=True)
    path = OUT / f"{name}.csv"
    with path.open("w") as f:
        f.write(",".join(list(columns) + ["label"]) + "\n")
        for row, label in zip(X, y):
            f.write(",".join(repr(float(v)) for v in row) + f",{int(label)}\n")
    print(f"{path.name}: n={len(y)} m={X.shape[1]} split={int((y == 0).sum())}:{int((y == 1).sum())}")


def main():
    wdbc = datasets.load_breast_cancer()
    # UCI wdbc: 357 benign, 212 malignant; encode malignant as class 1.
    write("wdbc", wdbc.data, 1 - wdbc.target, [c.replace(" ", "_") for c in wdbc.feature_names])

    anes = smd.anes96.load_pandas().data
    feats = ["popul", "TVnews", "selfLR", "ClinLR", "DoleLR", "PID", "age", "educ", "income"]
    write("anes96", anes[feats].to_numpy(), anes["vote"].to_numpy().astype(int), feats)

    digits = datasets.load_digits()
    mask = np.isin(digits.target, [3, 8])
    write("digits_3v8", digits.data[mask], (digits.target[mask] == 8).astype(int),
          [f"px{i}" for i in range(digits.data.shape[1])])


if __name__ == "__main__":
    main()
