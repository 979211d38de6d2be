"""Print the similarity constants and the xi identification table."""

from dataclasses import dataclass

from twistlab import verify as V


@dataclass
class Config:
    reps: tuple[str, str] = ("fund", "fund")


def main(cfg: Config = Config()):
    sim = V.check_similarity()
    print(f"similarity: {sim.status}")
    for k, v in sim.details.items():
        print(f"  {k}: {v}")
    xi = V.check_xi_identification(cfg.reps)
    print(f"xi identification: {xi.status}")
    for k, v in xi.details.get("candidates", {}).items():
        print(f"  xi = {k}: {v}")


if __name__ == "__main__":
    main()
