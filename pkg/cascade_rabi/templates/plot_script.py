plot_script_template = (
    "\"\"\"Render the reproduced figure panels.\n\n"
    "Needs matplotlib; run from this directory.\n"
    "\"\"\"\n"
    "import csv\n"
    "import json\n"
    "from pathlib import Path\n\n"
    "import matplotlib.pyplot as plt\n\n"
    "HERE = Path(__file__).resolve().parent\n"
    "COLORS = {{\n"
    "    \"p1\": \"red\",\n"
    "    \"p2\": \"blue\",\n"
    "    \"p3\": \"green\",\n"
    "    \"p4\": \"black\",\n"
    "}}\n\n"
    "manifest = json.loads((HERE / \"{manifest}\").read_text())\n"
    "for panel in manifest[\"panels\"]:\n"
    "    with open(HERE / panel[\"file\"], newline=\"\") as f:\n"
    "        rows = list(csv.reader(f))\n"
    "    header, data = rows[0], [[float(x) for x in row] for row in rows[1:]]\n"
    "    fig, ax = plt.subplots(figsize=(6, 4))\n"
    "    for k, name in enumerate(header[1:], start=1):\n"
    "        ax.plot(\n"
    "            [row[0] for row in data],\n"
    "            [row[k] for row in data],\n"
    "            color=COLORS[name],\n"
    "            label=name,\n"
    "        )\n"
    "    ax.set(xlabel=\"{xlabel}\", ylabel=\"probability\", title=panel[\"title\"])\n"
    "    ax.set_ylim(0, 1)\n"
    "    ax.legend()\n"
    "    fig.savefig(HERE / (panel[\"name\"] + \".png\"), dpi=150)\n"
    "    plt.close(fig)\n"
)


def render_plot_script(manifest: str = "manifest.json") -> str:
    return plot_script_template.format(manifest=manifest, xlabel="scaled time")
