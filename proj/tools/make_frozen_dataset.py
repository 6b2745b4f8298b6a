#!/usr/bin/env python3
"""Generate the bundled frozen recovered-cases table in JHU CSSE wide format.

The table is synthetic: 258 region rows over 22 Jan 2020 - 27 Feb 2021
(403 daily columns). Each region's cumulative recoveries follow a sum of
logistic waves with a handful of downward data corrections, so the derived
daily-delta series contains negative days just like the upstream file.
"""
import argparse
import csv
import datetime as dt
import sys

import numpy as np

COUNTRIES = [
    "Afghanistan", "Albania", "Algeria", "Andorra", "Angola", "Antigua and Barbuda",
    "Argentina", "Armenia", "Austria", "Azerbaijan", "Bahamas", "Bahrain",
    "Bangladesh", "Barbados", "Belarus", "Belgium", "Belize", "Benin", "Bhutan",
    "Bolivia", "Bosnia and Herzegovina", "Botswana", "Brazil", "Brunei",
    "Bulgaria", "Burkina Faso", "Burma", "Burundi", "Cabo Verde", "Cambodia",
    "Cameroon", "Central African Republic", "Chad", "Chile", "Colombia",
    "Comoros", "Congo (Brazzaville)", "Congo (Kinshasa)", "Costa Rica",
    "Cote d'Ivoire", "Croatia", "Cuba", "Cyprus", "Czechia", "Denmark",
    "Diamond Princess", "Djibouti", "Dominica", "Dominican Republic", "Ecuador",
    "Egypt", "El Salvador", "Equatorial Guinea", "Eritrea", "Estonia",
    "Eswatini", "Ethiopia", "Fiji", "Finland", "France", "Gabon", "Gambia",
    "Georgia", "Germany", "Ghana", "Greece", "Grenada", "Guatemala", "Guinea",
    "Guinea-Bissau", "Guyana", "Haiti", "Holy See", "Honduras", "Hungary",
    "Iceland", "India", "Indonesia", "Iran", "Iraq", "Ireland", "Israel",
    "Italy", "Jamaica", "Japan", "Jordan", "Kazakhstan", "Kenya", "Korea, South",
    "Kosovo", "Kuwait", "Kyrgyzstan", "Laos", "Latvia", "Lebanon", "Lesotho",
    "Liberia", "Libya", "Liechtenstein", "Lithuania", "Luxembourg",
    "Madagascar", "Malawi", "Malaysia", "Maldives", "Mali", "Malta",
    "Marshall Islands", "Mauritania", "Mauritius", "Mexico", "Moldova",
    "Monaco", "Mongolia", "Montenegro", "Morocco", "Mozambique", "MS Zaandam",
    "Namibia", "Nepal", "Netherlands", "New Zealand", "Nicaragua", "Niger",
    "Nigeria", "North Macedonia", "Norway", "Oman", "Pakistan", "Panama",
    "Papua New Guinea", "Paraguay", "Peru", "Philippines", "Poland", "Portugal",
    "Qatar", "Romania", "Russia", "Rwanda", "Saint Kitts and Nevis",
    "Saint Lucia", "Saint Vincent and the Grenadines", "Samoa", "San Marino",
    "Sao Tome and Principe", "Saudi Arabia", "Senegal", "Serbia", "Seychelles",
    "Sierra Leone", "Singapore", "Slovakia", "Slovenia", "Solomon Islands",
    "Somalia", "South Africa", "South Sudan", "Spain", "Sri Lanka", "Sudan",
    "Suriname", "Sweden", "Switzerland", "Syria", "Taiwan*", "Tajikistan",
    "Tanzania", "Thailand", "Timor-Leste", "Togo", "Trinidad and Tobago",
    "Tunisia", "Turkey", "US", "Uganda", "Ukraine", "United Arab Emirates",
    "Uruguay", "Uzbekistan", "Vanuatu", "Venezuela", "Vietnam",
    "West Bank and Gaza", "Yemen", "Zambia", "Zimbabwe",
]

PROVINCES = {
    "Australia": ["Australian Capital Territory", "New South Wales", "Northern Territory",
                  "Queensland", "South Australia", "Tasmania", "Victoria", "Western Australia"],
    "Canada": ["Alberta", "British Columbia", "Manitoba", "New Brunswick",
               "Newfoundland and Labrador", "Nova Scotia", "Ontario",
               "Prince Edward Island", "Quebec", "Saskatchewan"],
    "China": ["Anhui", "Beijing", "Chongqing", "Fujian", "Gansu", "Guangdong",
              "Guangxi", "Guizhou", "Hainan", "Hebei", "Heilongjiang", "Henan",
              "Hong Kong", "Hubei", "Hunan", "Inner Mongolia", "Jiangsu", "Jiangxi",
              "Jilin", "Liaoning", "Macau", "Ningxia", "Qinghai", "Shaanxi",
              "Shandong", "Shanghai", "Shanxi", "Sichuan", "Tianjin", "Tibet",
              "Unknown", "Xinjiang", "Yunnan", "Zhejiang"],
    "Denmark": ["Faroe Islands", "Greenland"],
    "France": ["French Guiana", "French Polynesia", "Guadeloupe", "Martinique",
               "Mayotte", "New Caledonia", "Reunion", "Saint Barthelemy",
               "Saint Pierre and Miquelon", "St Martin", "Wallis and Futuna"],
    "Netherlands": ["Aruba", "Bonaire, Sint Eustatius and Saba", "Curacao", "Sint Maarten"],
    "United Kingdom": ["Anguilla", "Bermuda", "British Virgin Islands", "Cayman Islands",
                       "Channel Islands", "Falkland Islands (Malvinas)", "Gibraltar",
                       "Isle of Man", "Montserrat", "Turks and Caicos Islands"],
}

# Final cumulative recoveries (approximate order of magnitude) for the
# countries that dominate the global curve.
LEADERS = {
    "India": 10.7e6, "Brazil": 9.2e6, "US": 6.3e6, "Russia": 3.8e6,
    "Turkey": 2.5e6, "Italy": 2.3e6, "Germany": 2.2e6, "Colombia": 2.1e6,
    "Argentina": 1.9e6, "Mexico": 1.6e6, "Iran": 1.4e6, "Poland": 1.4e6,
    "South Africa": 1.4e6, "Ukraine": 1.1e6, "Peru": 1.2e6,
}

N_REGIONS = 258
START = dt.date(2020, 1, 22)
END = dt.date(2021, 2, 27)


def region_rows():
    rows = []
    for country, provinces in PROVINCES.items():
        for p in provinces:
            rows.append((p, country))
    for c in COUNTRIES:
        rows.append(("", c))
    rows.sort(key=lambda r: (r[1], r[0]))
    if len(rows) < N_REGIONS:
        raise SystemExit(f"only {len(rows)} region names available")
    # Keep every province row, trim unprovinced countries from the tail.
    keep = rows[:N_REGIONS]
    for c in LEADERS:
        if ("", c) not in keep:
            raise SystemExit(f"leader {c} trimmed")
    return keep


def cumulative_curve(rng, n_days, final_total, china_like):
    t = np.arange(n_days, dtype=float)
    if china_like:
        waves = [(rng.uniform(25, 45), rng.uniform(6, 12), 1.0)]
    else:
        n_waves = rng.integers(1, 4)
        centers = np.sort(rng.uniform(90, n_days + 30, size=n_waves))
        waves = [(c, rng.uniform(12, 35), rng.uniform(0.3, 1.0)) for c in centers]
    curve = np.zeros(n_days)
    for center, width, weight in waves:
        curve += weight / (1.0 + np.exp(-(t - center) / width))
    curve /= curve.max() if curve.max() > 0 else 1.0
    curve *= final_total
    noise = rng.normal(0.0, 0.02, size=n_days) * np.gradient(curve)
    daily = np.clip(np.diff(curve, prepend=0.0) + noise, 0.0, None)
    counts = np.floor(np.cumsum(daily)).astype(np.int64)
    # Occasional upstream corrections: a later revision lowers the running total.
    for _ in range(rng.integers(0, 3)):
        day = rng.integers(150, n_days)
        cut = int(counts[day] * rng.uniform(0.005, 0.03))
        counts[day:] -= cut
    return np.clip(counts, 0, None)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("output")
    ap.add_argument("--seed", type=int, default=20210227)
    args = ap.parse_args(argv)

    rng = np.random.default_rng(args.seed)
    n_days = (END - START).days + 1
    dates = [START + dt.timedelta(days=i) for i in range(n_days)]
    header = ["Province/State", "Country/Region", "Lat", "Long"] + [
        f"{d.month}/{d.day}/{d.year % 100}" for d in dates
    ]

    with open(args.output, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for province, country in region_rows():
            if not province and country in LEADERS:
                total = LEADERS[country] * rng.uniform(0.97, 1.03)
            else:
                total = float(np.exp(rng.uniform(np.log(50), np.log(4e5))))
            counts = cumulative_curve(rng, n_days, total, country == "China")
            if country in ("Diamond Princess", "MS Zaandam"):
                lat, lon = "", ""
            else:
                lat = f"{rng.uniform(-50, 65):.4f}"
                lon = f"{rng.uniform(-170, 175):.4f}"
            w.writerow([province, country, lat, lon] + [str(int(v)) for v in counts])
    return 0


if __name__ == "__main__":
    sys.exit(main())
