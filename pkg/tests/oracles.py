"""Independent reference implementations used as test oracles."""


def brute_force_metrics(pred, gold, categories):
    """Metrics recounted position by position from the definitions.

    Gold 4 positions are ignored, gold 3 positions count toward accuracy
    only, 0/0 is 0 and the average is weighted by gold support.
    """
    n_scored = n_correct = 0
    tally = {c: [0, 0, 0] for c in categories}  # tp, fp, fn
    for p, g in zip(pred, gold):
        if g == 4:
            continue
        n_scored += 1
        if p == g:
            n_correct += 1
        if g == 3:
            continue
        if p == g:
            tally[g][0] += 1
        else:
            tally[g][2] += 1
            if p in tally:
                tally[p][1] += 1
    per = {}
    for c in categories:
        tp, fp, fn = tally[c]
        prec = tp / (tp + fp) if tp + fp else 0.0
        rec = tp / (tp + fn) if tp + fn else 0.0
        f1 = 2 * (prec * rec) / (prec + rec) if prec + rec else 0.0
        per[c] = (tp, fp, fn, prec, rec, f1, tp + fn)
    support = sum(v[6] for v in per.values())

    def avg(k):
        return sum(v[k] * v[6] for v in per.values()) / support if support else 0.0

    return {
        "per": per,
        "precision": avg(3),
        "recall": avg(4),
        "f1": avg(5),
        "accuracy": n_correct / n_scored if n_scored else 0.0,
    }
