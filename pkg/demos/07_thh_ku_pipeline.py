"""The full three-step pipeline, end to end, with its certificates.

Step 1 recognizes the Tor input, step 2 runs the collapsing relative
spectral sequence, and step 3 runs the absolute one: unique forced
differential, collapse, identification of the answer, and the resolution of
every multiplicative extension by a strict lift or a weight obstruction.
The same computation is available on the command line as

    gradss reproduce thh-ku --prime 5 --max-degree 60 --report report.json
"""

from gradss.thhku import input_facts, reproduce_thh_ku

p = 5
report = reproduce_thh_ku(p, 60)
print(f"pipeline ok: {report.ok}")
for step in report.steps:
    kinds = [c["kind"] for c in step.certificates]
    print(f"\nstep {step.name} (certified through degree {step.cert_bound})")
    print("  certificates:", ", ".join(kinds))
    print("  consumed facts:")
    facts = input_facts(p)
    for fid in sorted(step.consumed_facts):
        print(f"    {fid}: {facts[fid].content}")

final = report.steps[-1]
print("\nresult generators (name, total degree, weight):")
for g in final.result["generators"]:
    print(f"  {g['name']:4s} {g['total_degree']:4d}  weight {g['weight']}")

abutment = [c for c in final.certificates if c["kind"] == "abutment"][0]
print("\nextension problems resolved:")
by_kind = {}
for rel in abutment["relations"]:
    by_kind.setdefault(rel["kind"], []).append(rel["label"])
for kind, labels in sorted(by_kind.items()):
    print(f"  {kind}: {len(labels)} relations")
print("  unresolved:", abutment["unresolved"])
