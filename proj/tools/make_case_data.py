#!/usr/bin/env python3
"""Writes the bundled synthetic RNAi-style case study under data/cases/rnai.

The corpus is invented: record counts, citation skew, collaboration structure
and classification codes are drawn from a seeded generator so the output is
identical on every run. Re-run after editing and commit the result.

    python3 tools/make_case_data.py [--out data/cases/rnai] [--seed 7]
"""

import argparse
import json
import math
import os
import random

# (organisation variants, address tail, quality) - quality scales citations.
ORGS = [
    (["Harvard Univ", "Harvard University"], "Cambridge, MA 02138, USA", 2.2),
    (["MIT", "Massachusetts Institute of Technology"], "Cambridge, MA 02139, USA", 2.4),
    (["Whitehead Inst Biomed Res"], "Cambridge, MA 02142, USA", 2.0),
    (["Harvard Med Sch"], "Boston, MA 02115, USA", 1.8),
    (["Univ Cambridge", "University of Cambridge"], "Cambridge, England", 1.6),
    (["Univ Oxford"], "Oxford, England", 1.3),
    (["UCL", "University College London"], "London, England", 1.2),
    (["Univ Sussex"], "Brighton, E Sussex, England", 0.5),
    (["Univ Edinburgh"], "Edinburgh, Midlothian, Scotland", 1.0),
    (["Leiden Univ"], "Leiden, Netherlands", 0.9),
    (["Univ Amsterdam"], "Amsterdam, Netherlands", 0.8),
    (["Uppsala Univ"], "Uppsala, Sweden", 0.7),
    (["Karolinska Inst"], "Stockholm, Sweden", 1.0),
    (["Univ Copenhagen"], "Copenhagen, Denmark", 0.8),
    (["Inst Pasteur", "Institut Pasteur"], "Paris, France", 1.0),
    (["INSERM"], "Lyon, France", 0.6),
    (["Univ Geneva"], "Geneva, Switzerland", 0.9),
    (["ETH", "Swiss Fed Inst Technol"], "Zurich, Switzerland", 1.1),
    (["Univ Heidelberg"], "Heidelberg, Germany", 0.9),
    (["Max Planck Inst Biophys Chem"], "Gottingen, Germany", 2.0),
    (["Charite"], "Berlin, Germany", 0.7),
    (["Univ Munich"], "Muenchen, Germany", 0.8),
    (["Univ Vienna"], "Wien, Austria", 0.6),
    (["Univ Milan"], "Milan, Italy", 0.5),
    (["Univ Barcelona"], "Barcelona, Spain", 0.5),
    (["CNIO"], "Madrid, Spain", 0.7),
    (["Univ Tokyo"], "Tokyo, Japan", 0.6),
    (["Osaka Univ"], "Osaka, Japan", 0.5),
    (["Peking Univ"], "Beijing, Peoples R China", 0.4),
    (["Fudan Univ"], "Shanghai, Peoples R China", 0.3),
    (["Seoul Natl Univ"], "Seoul, South Korea", 0.4),
    (["Natl Univ Singapore"], "Singapore 117597, Singapore", 0.6),
    (["Univ Melbourne"], "Melbourne, Vic 3010, Australia", 0.7),
    (["Univ Sydney"], "Sydney, NSW 2006, Australia", 0.6),
    (["Univ Toronto"], "Toronto, ON M5S 1A8, Canada", 0.9),
    (["McGill Univ"], "Montreal, PQ H3A 2T5, Canada", 0.8),
    (["Johns Hopkins Univ"], "Baltimore, MD 21205, USA", 1.4),
    (["Carnegie Inst Washington"], "Baltimore, MD 21210, USA", 2.0),
    (["Rockefeller Univ"], "New York, NY 10021, USA", 1.6),
    (["Univ Penn"], "Philadelphia, PA 19104, USA", 1.1),
    (["Emory Univ"], "Atlanta, GA 30322, USA", 0.8),
    (["Univ Texas MD Anderson Canc Ctr"], "Houston, TX 77030, USA", 0.9),
    (["Univ Chicago"], "Chicago, IL 60637, USA", 1.0),
    (["Fred Hutchinson Canc Res Ctr"], "Seattle, WA 98109, USA", 1.1),
    (["Univ Calif San Francisco"], "San Francisco, CA 94143, USA", 1.5),
    (["Scripps Res Inst"], "San Diego, CA 92037, USA", 1.3),
    (["Univ Massachusetts"], "Worcester, MA 01605, USA", 1.9),
    (["Cold Spring Harbor Lab"], "Cold Spring Harbor, NY 11724, USA", 1.8),
]

# Collaboration neighbourhoods (indices into ORGS); authors mostly stay in one.
GROUPS = [
    [0, 1, 2, 3, 36, 38, 46, 47],
    [4, 5, 6, 7, 8, 9, 10, 19],
    [11, 12, 13, 14, 15, 16, 17, 18, 20, 21, 22],
    [23, 24, 25, 26, 27],
    [28, 29, 30, 31, 32, 33],
    [34, 35, 37, 39, 40, 41, 42, 43, 44, 45],
]

PATENT_ORGS = [
    ("Alnylam Pharmaceuticals", "Cambridge, MA, USA"),
    ("Sirna Therapeutics", "San Francisco, CA, USA"),
    ("Isis Pharmaceuticals", "San Diego, CA, USA"),
    ("Benitec", "Melbourne, Australia"),
    ("Silence Therapeutics", "London, UK"),
    ("Max Planck Gesellschaft", "Munich, Germany"),
    ("Intradigm", "Philadelphia, PA, USA"),
    ("Dharmacon", "Boston, MA, USA"),
    ("Calando Pharmaceuticals", "Seattle, WA, USA"),
    ("Tekmira", "Toronto, Canada"),
    ("Kyowa Hakko", "Tokyo, Japan"),
    ("Nitto Denko", "Osaka, Japan"),
    ("Santaris Pharma", "Copenhagen, Denmark"),
    ("Quark Pharmaceuticals", "Geneva, Switzerland"),
    ("Cenix BioScience", "Heidelberg, Germany"),
]

GENES = ["BCL2", "VEGF", "KRAS", "TP53", "MYC", "HIF1A", "EGFR", "CDK4", "SURVIVIN", "ApoB", "PCSK9", "TNF",
         "HPV16 E6", "HBV X", "CCR5", "STAT3", "AKT1", "HER2", "CD4", "PLK1"]
SYSTEMS = ["mammalian cells", "Caenorhabditis elegans", "Drosophila", "hepatocytes", "tumour xenografts",
           "cervical cancer cells", "neurons", "primary T cells", "zebrafish embryos", "plants"]

HIT_TITLES = [
    "siRNA knockdown of {g} in {s}",
    "RNA interference of {g} reveals a role in {s}",
    "Genome wide RNAi screen in {s} identifies {g}",
    "Silencing {g} by RNA interference in {s}",
    "Delivery of siRNA against {g} to {s}",
    "Off target effects of siRNA targeting {g}",
    "RNAi mediated suppression of {g} in {s}",
    "Chemically modified siRNA targeting {g}",
    "Interference RNA against {g} in {s}",
    "Mechanism of RNA interference in {s}",
]
MISS_TITLES = [
    "MicroRNA expression profiling of {g} in {s}",
    "Antisense oligonucleotides targeting {g}",
    "Structure of the {g} promoter",
    "Small molecule inhibition of {g} in {s}",
]

WOS_CATEGORIES_USED = [
    "Biochemistry & Molecular Biology", "Cell Biology", "Genetics & Heredity", "Oncology", "Biotechnology & Applied Microbiology",
    "Multidisciplinary Sciences", "Pharmacology & Pharmacy", "Virology", "Immunology", "Neurosciences",
    "Plant Sciences", "Developmental Biology", "Medicine, Research & Experimental", "Chemistry, Medicinal",
    "Biophysics", "Microbiology", "Hematology", "Gastroenterology & Hepatology", "Cardiac & Cardiovascular Systems",
    "Biochemical Research Methods", "Nanoscience & Nanotechnology", "Materials Science, Biomaterials",
    "Infectious Diseases", "Endocrinology & Metabolism", "Pathology",
]
WOS_CATEGORY_CLUSTERS = 7

JOURNALS = [
    ("NATURE", 0), ("SCIENCE", 0), ("CELL", 0), ("PROC NATL ACAD SCI USA", 0), ("NAT BIOTECHNOL", 1),
    ("NUCLEIC ACIDS RES", 2), ("RNA", 2), ("GENE DEV", 2), ("MOL CELL", 2), ("EMBO J", 2),
    ("CANCER RES", 3), ("ONCOGENE", 3), ("CLIN CANCER RES", 3), ("INT J CANCER", 3), ("J CLIN ONCOL", 3),
    ("J VIROL", 4), ("VIROLOGY", 4), ("J IMMUNOL", 4), ("BLOOD", 4), ("HEPATOLOGY", 4),
    ("MOL THER", 1), ("GENE THER", 1), ("J CONTROL RELEASE", 1), ("BIOMATERIALS", 1), ("HUM GENE THER", 1),
    ("PLANT CELL", 5), ("PLANT J", 5), ("DEVELOPMENT", 5), ("DEV BIOL", 5), ("NEURON", 6),
    ("J NEUROSCI", 6), ("J BIOL CHEM", 2), ("BIOCHEM BIOPH RES CO", 2), ("FEBS LETT", 2), ("PLOS ONE", 0),
]

MEDLINE_JOURNALS = ["Nature", "Science", "Cell", "Nucleic Acids Research", "RNA", "Molecular Therapy",
                    "Cancer Research", "Oncogene", "Journal of Virology", "Gene Therapy", "PLoS One",
                    "Journal of Biological Chemistry", "Molecular Cell", "Blood"]

IPC_USED = [
    ("C12N 15/11", "C12N"), ("C12N 15/113", "C12N"), ("A61K 31/713", "A61K"), ("A61K 48/00", "A61K"),
    ("C07H 21/02", "C07H"), ("C07H 21/04", "C07H"), ("A61P 35/00", "A61P"), ("A61P 31/12", "A61P"),
    ("C12Q 1/68", "C12Q"), ("A61K 9/127", "A61K"), ("C12N 5/10", "C12N"), ("A01H 5/00", "A01H"),
    ("G01N 33/50", "G01N"), ("A61K 47/48", "A61K"),
]

IPC_CLASSES = [
    "A01H", "A01K", "A01N", "A23L", "A61B", "A61F", "A61K", "A61L", "A61M", "A61N", "A61P", "A61Q",
    "B01D", "B01J", "B01L", "B82Y", "C07C", "C07D", "C07F", "C07H", "C07J", "C07K", "C08B", "C08G",
    "C12M", "C12N", "C12P", "C12Q", "C40B", "G01N", "G06F", "G06Q", "G16B", "H01L",
]
IPC_CLUSTER = {"A": 0, "B": 1, "C": 2, "G": 3, "H": 3}


def wos_category_names():
    extra = [
        "Agronomy", "Allergy", "Anatomy & Morphology", "Andrology", "Anesthesiology", "Astronomy & Astrophysics",
        "Automation & Control Systems", "Behavioral Sciences", "Biodiversity Conservation", "Biology",
        "Chemistry, Analytical", "Chemistry, Applied", "Chemistry, Inorganic & Nuclear", "Chemistry, Multidisciplinary",
        "Chemistry, Organic", "Chemistry, Physical", "Clinical Neurology", "Computer Science, Artificial Intelligence",
        "Computer Science, Interdisciplinary Applications", "Critical Care Medicine", "Crystallography",
        "Dentistry, Oral Surgery & Medicine", "Dermatology", "Ecology", "Economics", "Engineering, Biomedical",
        "Engineering, Chemical", "Engineering, Electrical & Electronic", "Entomology", "Environmental Sciences",
        "Evolutionary Biology", "Food Science & Technology", "Geosciences, Multidisciplinary", "Geriatrics & Gerontology",
        "Health Care Sciences & Services", "Horticulture", "Marine & Freshwater Biology", "Mathematical & Computational Biology",
        "Mathematics, Applied", "Mechanics", "Medical Informatics", "Medical Laboratory Technology",
        "Medicine, General & Internal", "Meteorology & Atmospheric Sciences", "Mycology", "Nephrology",
        "Nutrition & Dietetics", "Obstetrics & Gynecology", "Ophthalmology", "Optics", "Orthopedics",
        "Otorhinolaryngology", "Parasitology", "Pediatrics", "Peripheral Vascular Disease", "Physics, Applied",
        "Physics, Multidisciplinary", "Physiology", "Polymer Science", "Psychiatry", "Psychology",
        "Public, Environmental & Occupational Health", "Radiology, Nuclear Medicine & Medical Imaging",
        "Reproductive Biology", "Respiratory System", "Rheumatology", "Spectroscopy", "Statistics & Probability",
        "Surgery", "Toxicology", "Transplantation", "Tropical Medicine", "Urology & Nephrology", "Veterinary Sciences",
        "Zoology",
    ]
    names = list(WOS_CATEGORIES_USED) + extra
    k = 1
    while len(names) < 225:
        names.append("Subject Category %03d" % k)
        k += 1
    return names[:225]


def layout_clusters(rng, members, n_clusters, radius=10.0, spread=1.6):
    """Cluster centres on a circle, members scattered around their centre."""
    coords = []
    for c in members:
        angle = 2 * math.pi * c / n_clusters
        cx, cy = radius * math.cos(angle), radius * math.sin(angle)
        coords.append((round(cx + rng.gauss(0, spread), 4), round(cy + rng.gauss(0, spread), 4)))
    return coords


def knn_edges(coords, clusters, k, rng):
    edges = {}
    n = len(coords)
    for i in range(n):
        d = sorted(((math.dist(coords[i], coords[j]), j) for j in range(n) if j != i))
        for dist, j in d[:k]:
            s = math.exp(-dist / 3.0) * (1.0 if clusters[i] == clusters[j] else 0.5)
            key = (min(i, j), max(i, j))
            edges[key] = round(max(s, 0.01), 6)
    for _ in range(n // 10):
        i, j = rng.randrange(n), rng.randrange(n)
        if i != j:
            edges.setdefault((min(i, j), max(i, j)), round(0.02 + 0.05 * rng.random(), 6))
    return [{"i": i, "j": j, "s": s} for (i, j), s in sorted(edges.items())]


def basemap_doc(id_, scheme, codes, labels, clusters, coords, edges, reference=False, branches=None):
    nodes = []
    for idx, code in enumerate(codes):
        node = {"code": code, "label": labels[idx], "cluster": clusters[idx]}
        if branches:
            node["branch"] = branches[idx]
        node["x"] = coords[idx][0]
        node["y"] = coords[idx][1]
        nodes.append(node)
    doc = {"format": "estmap-basemap", "version": 1, "id": id_, "scheme": scheme}
    if reference:
        doc["reference"] = True
    doc["prune_threshold"] = 0.05
    doc["nodes"] = nodes
    doc["edges"] = edges
    return doc


def mesh_nodes():
    """822 two-level tree numbers across the C, D and E branches."""
    plan = [("C", 26, 400), ("D", 27, 280), ("E", 7, 142)]
    codes = []
    for branch, tops, total in plan:
        per = [total // tops + (1 if t < total % tops else 0) for t in range(tops)]
        for t in range(tops):
            for s in range(per[t]):
                codes.append("%s%02d.%03d" % (branch, t + 1, 100 + 7 * s))
    return codes


MESH_USED = [
    ("Neoplasms", "C04.100.100"), ("Breast Neoplasms", "C04.107.100"), ("Carcinoma, Hepatocellular", "C04.114.114"),
    ("Uterine Cervical Neoplasms", "C04.121.100"), ("Lung Neoplasms", "C04.128.107"),
    ("HIV Infections", "C02.100.107"), ("Hepatitis B", "C02.107.100"), ("Papillomavirus Infections", "C02.114.100"),
    ("Huntington Disease", "C10.100.100"), ("Macular Degeneration", "C11.100.100"), ("Hypercholesterolemia", "C18.100.100"),
    ("Inflammation", "C23.100.100"),
    ("RNA, Small Interfering", "D13.100.100"), ("RNA, Double-Stranded", "D13.107.100"), ("MicroRNAs", "D13.114.100"),
    ("Oligonucleotides, Antisense", "D13.121.107"), ("Liposomes", "D27.100.100"), ("Nanoparticles", "D27.107.100"),
    ("Proto-Oncogene Proteins c-bcl-2", "D12.100.100"), ("Vascular Endothelial Growth Factor A", "D12.107.100"),
    ("Tumor Suppressor Protein p53", "D12.114.100"), ("Receptor, Epidermal Growth Factor", "D08.100.107"),
    ("Antineoplastic Agents", "D27.114.100"),
    ("Gene Silencing", "E05.100.100"), ("Gene Knockdown Techniques", "E05.107.100"), ("Transfection", "E05.114.100"),
    ("Genetic Therapy", "E02.100.100"), ("Drug Delivery Systems", "E02.107.107"), ("Cell Line, Tumor", "E05.121.100"),
    ("Gene Expression Profiling", "E05.128.100"),
    ("Animals", "B01.050"), ("Humans", "B01.050.150.900.649.801.400.112.400.400"), ("Mice", "B01.050.150.900.649.313.992.635.505.500"),
    ("RNA Interference", "G05.360.340.024.340"), ("Gene Expression Regulation", "G05.308"),
]


def pick_orgs(rng, n):
    group = GROUPS[rng.randrange(len(GROUPS))]
    picked = []
    for _ in range(n):
        pool = group if rng.random() < 0.85 else range(len(ORGS))
        o = rng.choice(list(pool))
        if o not in picked:
            picked.append(o)
    return picked


def citations(rng, orgs, age):
    quality = max(ORGS[o][2] for o in orgs)
    base = rng.paretovariate(1.6) * quality * (0.6 + 0.15 * age)
    return int(base * 4)


def author(rng):
    last = rng.choice(["Smith", "Lee", "Wang", "Kim", "Muller", "Rossi", "Tanaka", "Dubois", "Jansen", "Olsen",
                       "Garcia", "Brown", "Chen", "Novak", "Silva", "Cohen", "Ito", "Berg", "Khan", "Park"])
    return last, rng.choice("ABCDEFGHJKLMNPRST")


def title(rng, hit):
    t = rng.choice(HIT_TITLES if hit else MISS_TITLES)
    return t.format(g=rng.choice(GENES), s=rng.choice(SYSTEMS))


def year_plan(rng, per_window):
    years = []
    for (lo, hi), n in per_window:
        span = list(range(lo, hi + 1))
        weights = [1 + 0.4 * k for k in range(len(span))]
        for _ in range(n):
            years.append(rng.choices(span, weights)[0])
    return years


def make_wos(rng, out):
    hits = year_plan(rng, [((1998, 2001), 32), ((2002, 2006), 105), ((2007, 2011), 118)])
    misses = year_plan(rng, [((1998, 2001), 3), ((2002, 2006), 4), ((2007, 2011), 5)])
    rows = [(y, True) for y in hits] + [(y, False) for y in misses]
    rng.shuffle(rows)
    lines = ["UT\tTI\tAB\tAU\tC1\tPY\tTC\tWC\tSO"]
    for k, (year, hit) in enumerate(rows):
        orgs = pick_orgs(rng, rng.choice([1, 1, 2, 2, 3, 4]))
        authors = []
        addresses = []
        for o in orgs:
            group = ["%s, %s" % author(rng) for _ in range(rng.choice([1, 2]))]
            authors.extend(group)
            name = rng.choice(ORGS[o][0])
            addresses.append("[%s] %s, %s" % ("; ".join(group), name, ORGS[o][1]))
        cats = sorted(set(rng.sample(WOS_CATEGORIES_USED[:12], 1) + rng.sample(WOS_CATEGORIES_USED, rng.choice([0, 1, 2]))))
        journal = rng.choice(JOURNALS)[0]
        tc = citations(rng, orgs, 2012 - year)
        abstract = "We report experiments on %s." % rng.choice(GENES) if rng.random() < 0.5 else ""
        lines.append("\t".join(["WOS:%09d" % (100000 + k), title(rng, hit), abstract, "; ".join(authors),
                                "; ".join(addresses), str(year), str(tc), "; ".join(cats), journal]))
    # One malformed year, reported and skipped at ingest.
    lines.append("\t".join(["WOS:000999999", "siRNA protocols", "", "Doe, J", "[Doe, J] Univ Oxford, Oxford, England",
                            "in press", "0", "Cell Biology", "RNA"]))
    write(out, "wos.tsv", "\n".join(lines) + "\n")


def make_medline(rng, out):
    hits = year_plan(rng, [((1998, 2001), 20), ((2002, 2006), 70), ((2007, 2011), 80)])
    misses = year_plan(rng, [((1998, 2001), 2), ((2002, 2006), 3), ((2007, 2011), 3)])
    rows = [(y, True) for y in hits] + [(y, False) for y in misses]
    rng.shuffle(rows)
    used = [m for m in MESH_USED]
    entries = []
    months = ["Jan", "Feb", "Mar", "Apr", "May", "Jun", "Jul", "Aug", "Sep", "Oct", "Nov", "Dec"]
    for k, (year, hit) in enumerate(rows):
        e = ["PMID- %d" % (9000000 + 137 * k), "OWN - NLM", "DP  - %d %s" % (year, rng.choice(months))]
        e.append("TI  - " + title(rng, hit) + ".")
        orgs = pick_orgs(rng, rng.choice([1, 2, 2, 3]))
        for o in orgs:
            e.append("AU  - %s %s" % author(rng))
        for o in orgs:
            e.append("AD  - %s, %s." % (ORGS[o][0][0], ORGS[o][1]))
        headings = rng.sample(used[:30], rng.randint(2, 6)) + rng.sample(used[30:], rng.randint(1, 3))
        for name, _ in headings:
            star = "*" if rng.random() < 0.3 else ""
            e.append("MH  - %s%s" % (star, name) if not star else "MH  - %s/*genetics" % name)
        e.append("JT  - " + rng.choice(MEDLINE_JOURNALS))
        entries.append("\n".join(e))
    write(out, "medline.txt", "\n\n".join(entries) + "\n")
    vocab = ["# descriptor\ttree number"] + ["%s\t%s" % (n, t) for n, t in MESH_USED]
    write(out, "mesh_vocabulary.tsv", "\n".join(vocab) + "\n")


def make_patents(rng, out):
    hits = year_plan(rng, [((1998, 2001), 11), ((2002, 2006), 24), ((2007, 2011), 22)])
    misses = year_plan(rng, [((2002, 2006), 2), ((2007, 2011), 2)])
    rows = [(y, True) for y in hits] + [(y, False) for y in misses]
    rng.shuffle(rows)
    lines = []
    for k, (year, hit) in enumerate(rows):
        gene = rng.choice(GENES)
        if hit:
            claims = rng.choice([
                "A double-stranded siRNA molecule targeting %s, wherein each strand is 19 to 23 nucleotides long.",
                "A method of inhibiting expression of %s in a cell by RNA interference.",
                "A composition comprising an RNAi agent directed against %s and a lipid carrier.",
            ]) % gene
        else:
            claims = "A monoclonal antibody that binds %s." % gene
        owners = rng.sample(PATENT_ORGS, rng.choice([1, 1, 2]))
        codes = sorted({c for c, _ in rng.sample(IPC_USED, rng.randint(1, 3))})
        rec = {
            "id": "US%d" % (6500000 + 9173 * k),
            "title": "%s therapeutics targeting %s" % ("Interfering RNA" if hit else "Antibody", gene),
            "claims": claims,
            "filing_year": year,
            "citation_count": int(rng.paretovariate(1.4) * 3) - 1 + (4 if owners[0][0].startswith("A") else 0),
            "ipc": codes,
            "affiliations": ["%s, %s" % o for o in owners],
            "inventors": ["%s %s" % author(rng) for _ in range(rng.randint(1, 4))],
        }
        lines.append(json.dumps(rec, sort_keys=False))
    write(out, "patents.jsonl", "\n".join(lines) + "\n")


def make_basemaps(rng, out):
    names = wos_category_names()
    clusters = [i % WOS_CATEGORY_CLUSTERS for i in range(len(names))]
    coords = layout_clusters(rng, clusters, WOS_CATEGORY_CLUSTERS)
    doc = basemap_doc("wos-categories-synthetic", "wos_category", names, names, clusters, coords,
                      knn_edges(coords, clusters, 5, rng), reference=True)
    write(out, "basemaps/wos_category.json", json.dumps(doc, indent=1) + "\n")

    jcodes = [j for j, _ in JOURNALS]
    jclusters = [c for _, c in JOURNALS]
    jcoords = layout_clusters(rng, jclusters, 7, radius=6.0, spread=1.0)
    doc = basemap_doc("journals-synthetic", "journal", jcodes, jcodes, jclusters, jcoords,
                      knn_edges(jcoords, jclusters, 4, rng))
    write(out, "basemaps/journal.json", json.dumps(doc, indent=1) + "\n")

    mcodes = mesh_nodes()
    branch_cluster = {"C": 0, "D": 1, "E": 2}
    mclusters = [branch_cluster[c[0]] * 4 + (int(c[1:3]) % 4) for c in mcodes]
    mcoords = layout_clusters(rng, mclusters, 12, radius=14.0, spread=1.8)
    labels = {".".join(t.split(".")[:2]): n for n, t in MESH_USED if t[0] in "CDE"}
    mlabels = [labels.get(c, "Descriptor " + c) for c in mcodes]
    doc = basemap_doc("mesh-synthetic", "mesh", mcodes, mlabels, mclusters, mcoords,
                      knn_edges(mcoords, mclusters, 4, rng), reference=True, branches=[c[0] for c in mcodes])
    write(out, "basemaps/mesh.json", json.dumps(doc, indent=1) + "\n")

    iclusters = [IPC_CLUSTER[c[0]] for c in IPC_CLASSES]
    icoords = layout_clusters(rng, iclusters, 4, radius=5.0, spread=1.2)
    doc = basemap_doc("ipc-synthetic", "ipc", IPC_CLASSES, IPC_CLASSES, iclusters, icoords,
                      knn_edges(icoords, iclusters, 4, rng))
    write(out, "basemaps/ipc.json", json.dumps(doc, indent=1) + "\n")


def make_aliases(out):
    rows = ["# variant\tcanonical"]
    for variants, _, _ in ORGS:
        for v in variants[1:]:
            rows.append("%s\t%s" % (v, variants[0]))
    write(out, "org_aliases.tsv", "\n".join(rows) + "\n")


MANIFEST = """\
[case]
name = rnai
seed = 7
output = ../../../out/rnai
retrieved_on = 2026-01-15

[inputs]
wos = wos.tsv
medline = medline.txt
uspto = patents.jsonl
mesh_vocabulary = mesh_vocabulary.tsv

[queries]
wos = TI=siRNA or TI=RNAi or TI="RNA interference" or TI="interference RNA"
medline = TI=siRNA or TI=RNAi or TI="RNA interference" or TI="interference RNA"
uspto = CLM=siRNA or CLM=RNAi or CLM="RNA interference" or CLM="interference RNA"

[windows]
first = 1998-2001
anchor = 2002
width = 5
end = 2011

[thresholds]
top_share_publications = 0.10
top_share_patents = 0.25
alpha = 0.05
chi2_critical = 3.841
min_geo_records = 20
centrality_share = 0.05
min_component_size = 4

[geo]
gazetteer = ../../gazetteer.tsv
aliases = ../../geo_aliases.tsv

[network]
aliases = org_aliases.tsv

[basemaps]
wos_category = basemaps/wos_category.json
journal = basemaps/journal.json
mesh = basemaps/mesh.json
ipc = basemaps/ipc.json

[harvest]
page_size = 20
rate_limit = 3
max_retries = 5
"""


def write(out, rel, text):
    path = os.path.join(out, rel)
    os.makedirs(os.path.dirname(path), exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(text)


def main():
    here = os.path.dirname(os.path.abspath(__file__))
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default=os.path.join(here, "..", "data", "cases", "rnai"))
    ap.add_argument("--seed", type=int, default=7)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    make_wos(rng, args.out)
    make_medline(rng, args.out)
    make_patents(rng, args.out)
    make_basemaps(rng, args.out)
    make_aliases(args.out)
    write(args.out, "manifest.ini", MANIFEST)


if __name__ == "__main__":
    main()
