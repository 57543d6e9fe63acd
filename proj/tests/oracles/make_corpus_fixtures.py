"""Writes the reputation fixture directory of the synthetic corpus."""
import hashlib
import json
import pathlib
import shutil
import sys

ENGINES = [f"engine{i:02d}" for i in range(1, 53)]
RETRIEVED = 1404172800

# url -> positives (of 52); URLs not listed are unknown to the provider
URLS = {
    "http://www.dailynews.co.uk/feed": 0,
    "http://ad.doubleclick.net/ad?id=1": 0,
    "http://www.google-analytics.com/collect?v=1": 0,
    "http://ads.admob.com/mads/gma?x=1": 0,
    "http://api.gamecloud.io/score": 0,
    "http://data.flurry.com/aap.do": 0,
    "http://ad.doubleclick.net/ad?id=2": 0,
    "http://cdn.evil-ads.net/banner/x.js": 1,
    "http://ad.doubleclick.net/ad?id=3": 0,
    "http://cdn.evil-ads.net/banner/y.js": 3,
    "http://malware.evil-ads.net/payload.apk": 5,
    "http://api.airpush.com/v2/push": 2,
    "http://track.sketchy.org/collect?id=9": 1,
    "http://api.chatter.com/feed": 0,
    "http://img.chatter.com/p/1.jpg": 0,
    "http://graph.facebook.com/me": 0,
    "http://x.adnet.io/ok/1": 0,
    "http://x.adnet.io/show": 0,
}

# domain -> (fqdn categories, verdict); adnet.io is left unknown
DOMAINS = {
    "dailynews.co.uk": ({"www.dailynews.co.uk": "news", "img.dailynews.co.uk": "news"}, "safe"),
    "doubleclick.net": ({"ad.doubleclick.net": "ads"}, "safe"),
    "google-analytics.com": ({"www.google-analytics.com": "IT"}, "safe"),
    "admob.com": ({"ads.admob.com": "ads"}, "unsure"),
    "gamecloud.io": ({"api.gamecloud.io": "games"}, "unsure"),
    "flurry.com": ({"data.flurry.com": "IT"}, "safe"),
    "evil-ads.net": ({"cdn.evil-ads.net": "ads", "malware.evil-ads.net": "malware"}, "malicious"),
    "airpush.com": ({"api.airpush.com": "ads"}, "suspicious"),
    "sketchy.org": ({}, "suspicious"),
    "chatter.com": ({"api.chatter.com": "social", "img.chatter.com": "social"}, "safe"),
    "facebook.com": ({"graph.facebook.com": "social"}, "safe"),
}


def sha(s):
    return hashlib.sha256(s.encode()).hexdigest()


def dump(path, doc):
    path.write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n", newline="\n")


def main(out):
    out = pathlib.Path(out)
    shutil.rmtree(out, ignore_errors=True)
    (out / "urls").mkdir(parents=True)
    (out / "domains").mkdir()
    index = {"schema_version": 1, "urls": {}, "domains": {}}
    for url, positives in URLS.items():
        scans = {e: {"detected": i < positives} for i, e in enumerate(ENGINES)}
        rel = f"urls/{sha(url)}.json"
        dump(out / rel, {"resource": url, "response_code": 1, "positives": positives,
                         "total": len(ENGINES), "scans": scans, "retrieved_at": RETRIEVED})
        index["urls"][url] = rel
    for domain, (cats, verdict) in DOMAINS.items():
        rel = f"domains/{sha(domain)}.json"
        dump(out / rel, {"resource": domain, "response_code": 1, "categories": cats,
                         "webutation_verdict": verdict, "retrieved_at": RETRIEVED})
        index["domains"][domain] = rel
    dump(out / "index.json", index)


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else pathlib.Path(__file__).parents[1] / "data/corpus/fixtures")
