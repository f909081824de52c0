#!/usr/bin/env python3
"""Writes the sample order table used by the demo dashboard and scenario.

Deterministic: the same seed always produces the same bytes.
"""
import argparse
import csv
import datetime as dt
import random

CATEGORIES = {
    "Furniture": (["Chairs", "Tables", "Bookcases", "Furnishings"], 220.0, 0.06),
    "Office Supplies": (["Binders", "Paper", "Storage", "Art"], 60.0, 0.17),
    "Technology": (["Phones", "Accessories", "Machines", "Copiers"], 310.0, 0.15),
}
REGIONS = ["Central", "East", "South", "West"]
SEGMENTS = ["Consumer", "Corporate", "Home Office"]


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="data/sample/superstore.csv")
    parser.add_argument("--seed", type=int, default=2022)
    parser.add_argument("--start", default="2021-01-01")
    parser.add_argument("--end", default="2022-12-31")
    args = parser.parse_args()

    rng = random.Random(args.seed)
    day = dt.date.fromisoformat(args.start)
    end = dt.date.fromisoformat(args.end)
    rows = []
    order = 1
    while day <= end:
        # quieter weekends, a little growth over time
        base = 2 if day.weekday() >= 5 else 5
        for _ in range(rng.randint(0, base)):
            category = rng.choice(list(CATEGORIES))
            subs, mean_price, margin = CATEGORIES[category]
            quantity = rng.randint(1, 6)
            growth = 1.0 + (day - dt.date.fromisoformat(args.start)).days / 1500.0
            sales = round(rng.lognormvariate(0, 0.6) * mean_price * quantity / 3 * growth, 2)
            profit = round(sales * rng.gauss(margin, 0.12), 2)
            rows.append([
                f"CA-{day.year}-{order:06d}",
                day.isoformat(),
                rng.choice(SEGMENTS),
                rng.choice(REGIONS),
                category,
                rng.choice(subs),
                f"{sales:.2f}",
                quantity,
                f"{profit:.2f}",
            ])
            order += 1
        day += dt.timedelta(days=1)

    with open(args.out, "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["Order ID", "Order Date", "Segment", "Region", "Category", "Sub-Category", "Sales",
                    "Quantity", "Profit"])
        w.writerows(rows)
    print(f"wrote {len(rows)} rows to {args.out}")


if __name__ == "__main__":
    main()
