#!/usr/bin/env python3
"""Regenerates the bundled sample corpus, annotations and temporal training set.

Sentences carry a reference label (C context, R relevant, P relevant with a
prediction). Three simulated annotators start from the reference and flip a
few sentences each, so agreement is high but not perfect. Offsets are code
point indices, which match the char offsets used by the Rust crate.
"""

import json
import random
from pathlib import Path

DATA = Path(__file__).resolve().parent.parent / "data"

C, R, P = "C", "R", "P"

ITEMS = [
    {
        "id": "vz-2020-07-28",
        "title": "Verizon looks undervalued after a boring quarter",
        "author": "Mark Reilly",
        "source": "Market Notes",
        "published": "2020-07-28",
        "sentences": [
            ("Verizon Communications (NYSE:VZ) is proving to be a stable but undervalued company in the market today.", C),
            ("In fact, VZ stock is worth at least 55% more than its price today using an analysis of its dividend yield, its own P/E ratio history, and a comparison with its peers.", R),
            ("The company reported “boring” earnings, according to Barron’s magazine for Q2 on July 24.", C),
            ("But the magazine says “boring is good” in this market.", C),
            ("They point out that the communications business is not a bad place to be in a pandemic.", C),
            ("For example, Verizon said that its earnings on a non-GAAP adjusted basis was $1.18 per share.", C),
            ("This was only 3% lower than a year ago.", C),
            ("On an adjusted EBITDA (earnings before interest, taxes, depreciation, and amortization) basis, its cash flow was down 5%.", C),
            ("However, Verizon generated higher cash flow.", C),
            ("For example, first-half 2020 cash flow from operations of $23.6 billion, an increase of $7.7 billion from first-half of 2019.", C),
            ("This represents a huge increase of over 206%.", C),
            ("Moreover, its free cash flow (FCF) in the first half was $13.7 billion, an increase of 74.1 percent year over year.", C),
            ("But consider this.", C),
            ("Verizon trades for a paltry 12.3 times this year’s expected earnings and just 12 times next year.", (P, "just 12 times next year")),
            ("The dividend yield of 4.3% will remain well covered by free cash flow next year.", P),
            ("Analysts expect VZ stock to reach $70 within the coming months.", P),
            ("The company was formed in 2000 after a merger of two regional carriers.", C),
            ("Its headquarters are in New York and it employs more than 130,000 people.", C),
        ],
    },
    {
        "id": "aapl-2021-01-25",
        "title": "Apple heads into earnings with record iPhone demand",
        "author": "Laura Chen",
        "source": "Tech Street",
        "published": "2021-01-25",
        "sentences": [
            ("Apple (NASDAQ:AAPL) will report its fiscal first-quarter results on Wednesday after the close.", C),
            ("The company was founded in a garage in Los Altos in 1976 by Steve Jobs and Steve Wozniak.", C),
            ("Its first computer was sold as a bare circuit board to hobbyists.", C),
            ("Over the following decades the firm moved from personal computers to music players, phones and watches.", C),
            ("The iPhone was introduced at a conference in San Francisco in January 2007.", C),
            ("Many observers doubted that a phone without a keyboard could succeed.", C),
            ("The device went on to change how people listen to music, take pictures and read the news.", C),
            ("Tim Cook became chief executive in 2011 and has focused on services and wearables.", C),
            ("The campus in Cupertino, a ring-shaped building surrounded by trees, opened to employees in 2017.", C),
            ("Visitors can walk through a public center with a café and a rooftop terrace.", C),
            ("Fans still line up outside stores on launch days in many cities.", C),
            ("The brand is regularly ranked among the most valuable in the world.", C),
            ("Turning to the numbers, AAPL stock has gained 80% over the past twelve months.", R),
            ("Analysts expect revenue of $103 billion for the quarter, up 12% from a year earlier.", R),
            ("iPhone sales rose 18% in the previous quarter as the first 5G models shipped.", R),
            ("Services revenue reached $14.5 billion, a record for the segment.", R),
            ("The company will likely guide for revenue growth of about 10% next quarter.", P),
            ("Gross margin should stay near 38% as component costs ease.", R),
            ("AAPL is going to benefit from a strong upgrade cycle in China next year.", P),
            ("Wedbush will raise its price target to $175 if the guidance beats estimates.", P),
            ("The shares trade at 35 times forward earnings, above the five-year average of 18.", R),
            ("Apple returned $21 billion to shareholders through buybacks and dividends last quarter.", R),
            ("In other news, the company opened a new store in Bangkok last month.", C),
            ("The store sits on a plaza by the river and hosts free photography classes.", C),
            ("Local designers helped choose the materials for the glass facade.", C),
            ("Employees at the store speak several languages to serve tourists.", C),
            ("Weekend sessions teach children to code with simple games.", C),
            ("The opening drew a crowd of several hundred people despite the rain.", C),
        ],
    },
    {
        "id": "tsla-2021-04-02",
        "title": "Tesla deliveries beat expectations",
        "author": "Daniel Ortiz",
        "source": "EV Daily",
        "published": "2021-04-02",
        "sentences": [
            ("Tesla (NASDAQ:TSLA) delivered 184,800 vehicles in the first quarter, beating the consensus of 168,000.", R),
            ("Model 3 and Model Y accounted for 182,780 of the deliveries.", R),
            ("Production of the Model S and Model X was paused during a factory refresh.", C),
            ("Elon Musk has led the electric car maker since 2008.", C),
            ("The company builds cars in Fremont and Shanghai and is constructing plants in Berlin and Austin.", C),
            ("TSLA stock rose 4% in early trading after the report.", R),
            ("Wall Street expects TSLA to deliver 750,000 vehicles in 2021.", P),
            ("The new factories will add capacity of 500,000 cars a year by 2022.", P),
            ("Tesla said the supply of semiconductors remains tight.", C),
            ("The company's first car was a roadster built on a British sports car chassis.", C),
        ],
    },
    {
        "id": "msft-2021-04-28",
        "title": "Microsoft cloud growth keeps momentum",
        "author": "Priya Natarajan",
        "source": "Cloud Ledger",
        "published": "2021-04-28",
        "sentences": [
            ("Microsoft (NASDAQ:MSFT) reported revenue of $41.7 billion for the third quarter, up 19%.", R),
            ("Azure revenue grew 50%, slightly ahead of the 46% analysts had pencilled in.", R),
            ("Satya Nadella has run the company since 2014.", C),
            ("He moved the business away from licensed software toward subscriptions.", C),
            ("Earnings per share came in at $1.95 against an estimate of $1.78.", R),
            ("MSFT shares slipped 2% in extended trading as investors locked in gains.", R),
            ("The company will complete the $16 billion purchase of Nuance later this year.", P),
            ("Management expects Azure growth of 43% to 44% next quarter.", P),
            ("The firm's headquarters in Redmond sit on a large campus with sports fields.", C),
            ("Gaming revenue increased 50% thanks to strong Xbox content and services sales.", R),
            ("Microsoft was founded in Albuquerque in 1975.", C),
        ],
    },
    {
        "id": "xom-2021-02-02",
        "title": "Exxon posts annual loss as oil prices slump",
        "author": "Henry Walsh",
        "source": "Energy Wire",
        "published": "2021-02-02",
        "sentences": [
            ("Exxon Mobil (NYSE:XOM) posted a full-year loss of $22.4 billion, its first annual loss in decades.", R),
            ("The oil major wrote down $20 billion of natural gas assets in the fourth quarter.", R),
            ("Brent crude averaged $42 a barrel in 2020, down 35% from the year before.", R),
            ("The company traces its roots to the Standard Oil trust of the nineteenth century.", C),
            ("Its refineries along the Gulf Coast were shut for several days during storms last summer.", C),
            ("XOM will cut capital spending to between $16 billion and $19 billion in 2021.", P),
            ("The dividend of $0.87 per share will be maintained, the company said.", P),
            ("Investors have pushed the board to add directors with experience in clean energy.", C),
            ("XOM shares are down 20% over the past year while the S&P 500 rose 16%.", R),
            ("Darren Woods has been chairman since 2017.", C),
        ],
    },
    {
        "id": "eurusd-2021-03-11",
        "title": "Euro steadies ahead of ECB meeting",
        "author": "Sofia Marino",
        "source": "FX Brief",
        "published": "2021-03-11",
        "sentences": [
            ("The euro traded at $1.195 on Thursday morning, little changed from the previous close.", R),
            ("EUR/USD has fallen 2% since the start of the year as US yields climbed.", R),
            ("The European Central Bank meets today in Frankfurt.", C),
            ("Christine Lagarde took over as president of the bank in 2019.", C),
            ("Economists expect the ECB to keep its deposit rate at -0.5%.", R),
            ("The bank will accelerate bond purchases over the next quarter, according to strategists at ING.", P),
            ("The euro could fall to $1.17 if the bank signals more easing.", R),
            ("Traders in London said volumes were thin ahead of the announcement.", C),
            ("The common currency was introduced for cash payments in 2002.", C),
        ],
    },
    {
        "id": "jpm-2021-04-14",
        "title": "JPMorgan profit jumps on reserve releases",
        "author": "Ethan Brooks",
        "source": "Bank Watch",
        "published": "2021-04-14",
        "sentences": [
            ("JPMorgan Chase (NYSE:JPM) earned $14.3 billion in the first quarter, more than double a year earlier.", R),
            ("The bank released $5.2 billion of reserves it had set aside for pandemic loan losses.", R),
            ("Jamie Dimon has led the bank since 2005.", C),
            ("In his annual letter he wrote about competition from technology companies.", C),
            ("Investment banking fees rose 57% to $3 billion.", R),
            ("Net interest income fell 4% as loan demand stayed weak.", R),
            ("JPM expects net interest income of about $55 billion for the full year.", R),
            ("The bank will hire 2,000 people for its consumer branches next year.", P),
            ("The lender's tower on Park Avenue is being rebuilt and will be finished in 2025.", C),
            ("JPM stock fell 1.5% after the results.", R),
        ],
    },
    {
        "id": "ko-2021-02-10",
        "title": "Coca-Cola sees recovery as venues reopen",
        "author": "Grace Kim",
        "source": "Consumer Pulse",
        "published": "2021-02-10",
        "sentences": [
            ("Coca-Cola (NYSE:KO) reported fourth-quarter revenue of $8.6 billion, down 5%.", R),
            ("Organic revenue fell 2% as sales at cinemas, stadiums and restaurants stayed weak.", R),
            ("The drink was created by a pharmacist in Atlanta in 1886.", C),
            ("The recipe is kept in a vault that visitors can see at a museum in the city.", C),
            ("KO will raise its dividend for the 59th consecutive year in April, analysts said.", P),
            ("The company expects organic revenue growth of high single digits in 2021.", P),
            ("Comparable earnings per share were $0.47, beating the consensus by $0.05.", R),
            ("The brand sponsors many sports events around the world.", C),
            ("James Quincey became chief executive in 2017.", C),
        ],
    },
    {
        "id": "btc-2021-02-08",
        "title": "Bitcoin jumps after Tesla purchase",
        "author": "Nina Petrova",
        "source": "Crypto Desk",
        "published": "2021-02-08",
        "sentences": [
            ("Bitcoin rose 15% to $44,000 after Tesla disclosed a $1.5 billion purchase.", R),
            ("The carmaker will accept the currency as payment for its cars.", P),
            ("The coin was created in 2009.", C),
        ],
    },
    {
        "id": "nflx-2021-01-19",
        "title": "Netflix passes 200 million subscribers",
        "author": "Oliver Grant",
        "source": "Media Markets",
        "published": "2021-01-19",
        "sentences": [
            ("Netflix (NASDAQ:NFLX) added 8.5 million subscribers in the fourth quarter, ahead of the 6 million forecast.", R),
            ("Total paid memberships passed 200 million for the first time.", R),
            ("The service began as a DVD rental business that mailed discs in red envelopes.", C),
            ("Reed Hastings co-founded the company in 1997 in Scotts Valley, California.", C),
            ("Its first original series premiered in 2013.", C),
            ("The company will no longer need to borrow to fund its content spending, executives said.", P),
            ("NFLX is going to consider share buybacks to return excess cash.", P),
            ("Revenue grew 22% to $6.6 billion.", R),
            ("NFLX shares jumped 13% in after-hours trading.", R),
            ("The popular chess drama was watched by 62 million households in its first month.", C),
            ("Production in many countries was disrupted for months during lockdowns.", C),
            ("Operating margin is expected to reach 20% next year.", P),
        ],
    },
]

ANNOTATORS = [("annotator1", 0.0), ("annotator2", 0.12), ("annotator3", 0.18)]


def body_and_offsets(sentences):
    offsets, pos, parts = [], 0, []
    for text, _ in sentences:
        if parts:
            pos += 1
        offsets.append((pos, pos + len(text)))
        parts.append(text)
        pos += len(text)
    return " ".join(parts), offsets


def label_kind(label):
    return label[0] if isinstance(label, tuple) else label


def spans_for(labels, sentences, offsets, body):
    spans = []
    i = 0
    while i < len(labels):
        if labels[i] == C:
            i += 1
            continue
        j = i
        while j + 1 < len(labels) and labels[j + 1] != C:
            j += 1
        spans.append({"start": offsets[i][0], "end": offsets[j][1], "label": "Relevant"})
        i = j + 1
    for k, lab in enumerate(labels):
        if lab != P:
            continue
        start, end = offsets[k]
        ref = sentences[k][1]
        if isinstance(ref, tuple):
            phrase = ref[1]
            local = sentences[k][0].index(phrase)
            start, end = start + local, start + local + len(phrase)
        spans.append({"start": start, "end": end, "label": "Prediction"})
    spans.sort(key=lambda s: (s["start"], s["label"]))
    for s in spans:
        assert body[s["start"]:s["end"]].strip() == body[s["start"]:s["end"]]
    return spans


def annotations():
    sets = []
    for n, item in enumerate(ITEMS):
        body, offsets = body_and_offsets(item["sentences"])
        reference = [label_kind(lab) for _, lab in item["sentences"]]
        for a, (name, flip) in enumerate(ANNOTATORS):
            rng = random.Random(1000 * n + a)
            labels = []
            for lab in reference:
                if rng.random() < flip:
                    lab = C if lab != C else R
                labels.append(lab)
            sets.append({
                "news_id": item["id"],
                "annotator_id": name,
                "spans": spans_for(labels, item["sentences"], offsets, body),
            })
    return sets


SUBJECTS = ["Apple", "Tesla", "Microsoft", "Verizon", "Exxon Mobil", "Netflix", "JPMorgan Chase", "Coca-Cola",
            "AAPL", "TSLA", "MSFT", "VZ", "XOM", "NFLX", "JPM", "KO", "The company", "The bank", "The euro", "Bitcoin"]
METRICS = ["revenue", "earnings", "free cash flow", "operating margin", "net income", "sales", "the dividend"]
AMOUNTS = ["$2.1 billion", "$450 million", "12%", "3.5%", "$1.18 per share", "$90 billion", "7 percent", "25%"]
PAST = [
    "{s} reported {m} of {a} last quarter.",
    "{s} posted a rise in {m} of {a} in 2020.",
    "{s} shares fell {a} after the results were published.",
    "{s} raised {m} by {a} a year ago.",
    "Last year {s} cut {m} to {a}.",
    "{s} announced a buyback of {a} in March.",
    "{s} lost {a} of its value during the selloff.",
    "{s} had already warned that {m} would fall.",
]
PRESENT = [
    "{s} trades at {a} below its average valuation.",
    "{s} is the largest holding in the fund with {a} of assets.",
    "{s} pays {m} of {a} to shareholders.",
    "{s} shares are up {a} this month.",
    "{s} remains cheap at {a} of sales.",
    "Analysts say {s} has {m} of {a}.",
    "{s} is proving to be a stable investment with {m} of {a}.",
    "{s} generates {m} of {a} each quarter.",
]
FUTURE = [
    "{s} will report {m} of {a} next quarter.",
    "{s} is going to raise {m} by {a} next year.",
    "{s} will likely cut {m} to {a} in the coming months.",
    "{s} shares will rise {a} once the merger closes.",
    "{s} shall pay {m} of {a} next year.",
    "{s} will probably grow {m} by {a} in 2022.",
    "Next year {s} will return {a} to shareholders.",
    "{s} won't reach {m} of {a} before 2023.",
]


def temporal_train():
    rng = random.Random(7)
    rows = []
    for tense, templates in (("Past", PAST), ("Present", PRESENT), ("Future", FUTURE)):
        for _ in range(50):
            t = rng.choice(templates)
            rows.append({"text": t.format(s=rng.choice(SUBJECTS), m=rng.choice(METRICS), a=rng.choice(AMOUNTS)),
                         "tense": tense})
    rng.shuffle(rows)
    return rows


COMPANIES = [("Apple", "AAPL"), ("Tesla", "TSLA"), ("Microsoft", "MSFT"), ("Verizon", "VZ"), ("Exxon Mobil", "XOM"),
             ("Netflix", "NFLX"), ("JPMorgan Chase", "JPM"), ("Coca-Cola", "KO")]
PEOPLE = ["Tim Cook", "Elon Musk", "Satya Nadella", "Darren Woods", "Jamie Dimon", "James Quincey", "Reed Hastings"]
PLACES = ["New York", "San Francisco", "Austin", "Berlin", "Shanghai", "London", "Atlanta", "Redmond", "Frankfurt"]
FIN = [
    "{name} (NYSE:{sym}) shares rose {pct} after quarterly revenue reached {money}.",
    "{sym} stock trades at {x} times forward earnings, below its five-year average.",
    "Analysts expect {sym} to post earnings per share of {eps} on revenue of {money}.",
    "{name} will raise its dividend by {pct} next year, according to analysts.",
    "The {sym} dividend yield of {pct} is covered by free cash flow of {money}.",
    "Operating margin improved to {pct} while net income climbed to {money}.",
    "{sym} stock fell {pct} on the Nasdaq as investors sold the shares.",
    "Revenue is expected to grow {pct} in {year}, reaching {money}.",
    "{name} generated {money} in free cash flow (FCF), up {pct} from a year earlier.",
    "{sym} is going to return {money} to shareholders through buybacks next year.",
    "The stock has gained {pct} this year and now trades near ${price}.",
    "Adjusted EBITDA rose {pct} to {money} in the quarter.",
    "The P/E ratio of {x} suggests {sym} stock is undervalued by at least {pct}.",
    "Guidance for the next quarter calls for sales of {money}, up {pct}.",
    "{name} will cut costs by {money} by {year}, lifting margins to {pct}.",
    "The euro rose {pct} against the dollar, lifting {sym} overseas revenue by {money}.",
]
CONTEXT = [
    "{person} joined the company as a young engineer and later became chief executive.",
    "The headquarters in {place} sit on a wooded campus with a lake and walking trails.",
    "The founders met at a university in {place} and started the business in a small garage.",
    "Employees often describe a culture of long hours and intense competition for new ideas.",
    "{person} grew up in {place} and studied physics before moving into business.",
    "The company sponsors a music festival and several youth sports clubs every summer.",
    "A museum near the old factory tells the story of the early years of the brand.",
    "Visitors can tour the original workshop, where the first prototypes were assembled by hand.",
    "The firm has faced criticism from environmental groups over its packaging and waste.",
    "A biography of {person} became a bestseller and was later adapted into a film.",
    "The annual developer conference in {place} draws thousands of people from around the world.",
    "Local residents complained about traffic when the new offices opened downtown.",
    "The logo was redesigned several times before the current version was chosen.",
    "Many early customers were hobbyists who wrote letters to the founders with suggestions.",
    "The company donated computers and books to schools in rural communities.",
    "Architects designed the building with glass walls to let in natural light.",
]


def lda_corpus(n_items=160):
    rng = random.Random(11)
    items = []
    for i in range(n_items):
        name, sym = rng.choice(COMPANIES)

        def fill(t):
            return t.format(name=name, sym=sym, person=rng.choice(PEOPLE), place=rng.choice(PLACES),
                            pct=f"{rng.randint(1, 60)}%", money=f"${rng.randint(1, 90)}.{rng.randint(0, 9)} billion",
                            x=f"{rng.randint(8, 40)}.{rng.randint(0, 9)}", eps=f"${rng.randint(0, 9)}.{rng.randint(10, 99)}",
                            year=rng.choice(["2021", "2022", "2023"]), price=rng.randint(20, 400))

        fin = [fill(t) for t in rng.sample(FIN, rng.randint(8, 12))]
        ctx = [fill(t) for t in rng.sample(CONTEXT, rng.randint(8, 12))]
        blocks = [ctx, fin] if rng.random() < 0.5 else [fin, ctx]
        body = " ".join(blocks[0] + blocks[1])
        items.append({"id": f"lda-{i:03d}", "title": f"{name} update", "author": "Desk", "source": "Synthetic",
                      "published": "2021-01-01", "body": body})
    return items


def main():
    with open(DATA / "corpus.jsonl", "w", encoding="utf-8") as f:
        for item in ITEMS:
            body, _ = body_and_offsets(item["sentences"])
            rec = {k: item[k] for k in ("id", "title", "author", "source", "published")}
            rec["body"] = body
            f.write(json.dumps(rec, ensure_ascii=False) + "\n")
    with open(DATA / "annotations.json", "w", encoding="utf-8") as f:
        json.dump(annotations(), f, ensure_ascii=False, indent=1)
        f.write("\n")
    with open(DATA / "lda_corpus.jsonl", "w", encoding="utf-8") as f:
        for rec in lda_corpus():
            f.write(json.dumps(rec, ensure_ascii=False) + "\n")
    with open(DATA / "temporal_train.jsonl", "w", encoding="utf-8") as f:
        for row in temporal_train():
            f.write(json.dumps(row, ensure_ascii=False) + "\n")


if __name__ == "__main__":
    main()
