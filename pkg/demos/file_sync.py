"""Synchronize a 100 kb file that lost d bits, with VT-only and GC segments."""
from guesscheck.sync import SyncConfig, make_instance, summarize, sync_experiment, sync_run

x, y = make_instance(100000, 60, seed=3)
for strategy in ("sync_vt", "sync_gc"):
    res, recon = sync_run(x, y, strategy, SyncConfig(delta=2), keep_transcript=True)
    kinds = {}
    for batch in res.transcript:
        for m in batch:
            kinds[m.kind] = kinds.get(m.kind, 0) + m.bits
    print(f"{strategy}: {res.rounds} rounds, {res.total_bits} bits, ok={res.success}")
    print("   bits by message kind:", kinds)

for d in (50, 100):
    s = summarize(sync_experiment(100000, d, 20, seed=d))
    print(f"d={d}:", {k: (round(v["mean_rounds"], 2), round(v["mean_total_bits"]))
                      for k, v in s.items()})
