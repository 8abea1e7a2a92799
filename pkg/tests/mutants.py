"""Single-defect variants of the corpus, one per diagnostic code."""

from __future__ import annotations

from pathlib import Path

CORPUS = Path(__file__).resolve().parent.parent / "corpus"


def corpus_texts() -> dict[str, str]:
    return {p.name: p.read_text(encoding="utf-8") for p in sorted(CORPUS.iterdir())}


def _replace(old: str, new: str):
    def edit(text: str) -> str:
        assert old in text, old
        return text.replace(old, new, 1)
    return edit


def _append(extra: str):
    return lambda text: text + extra


# code -> {file name: edit function or full new content}
MUTANTS: dict[str, dict] = {
    "CC0": {"FourWindowsDog.archv": _replace("in WindowStatus rearRightStat;",
                                             "in WindowStatus rearRightStat;\n  variationPoint: Extra;")},
    "CC1": {"WindowSystem.arc": _replace("MoreWindows [0..1]", "MoreWindows [1..1]"),
            "Empty.archv": "variantConfig EmptyWindows for WindowSystem {\n}\n"},
    "CC2": {"FourWindowSystem.archv": _replace("WindowSystem.MoreWindows", "WindowSystem.NoVP")},
    "CC3": {"FourWindowSystem.archv": _replace("  WindowSystem {", "  WindowSystem extends NoSuchConfig {")},
    "CC4": {"Stray.archv": "variant Stray realizes WindowSystem.NoSuchVP {\n}\n"},
    "CC5": {"FourWindowSystem.archv": _replace("FourWindows;", "NoSuchVariant;")},
    "CC6": {"FourWindowSystem.archv": _replace("FourWindows;", "FourWindows(x);")},
    "MA01": {"WindowSystem.arc": _replace("in WinderRequest coDriverRequest,",
                                          "in WinderRequest coDriverRequest,\n    in WinderRequest driverRequest,")},
    "MA02": {"WindowSystem.arc": _replace("    coDriverWinder;", "    coDriverWinder;\n  component WindowWinder driverWinder;")},
    "MA03": {"WindowSystem.arc": _replace("variationPoint: MoreWindows [0..1];",
                                          "variationPoint: MoreWindows [0..1];\n  variationPoint: MoreWindows;")},
    "MA04": {"FourWindows2.archv": "variant FourWindows realizes WindowSystem.MoreWindows {\n}\n"},
    "MA05": {"LockControlUnit.arc": _replace("component LockActuator;",
                                             "component LockActuator;\n  component NoSuchType;")},
    "MA06": {"WindowSystem.arc": _replace("WindowWatchDog.overallStat", "WindowWatchDog.noSuchPort")},
    "MA07": {"WindowSystem.arc": _replace("connect coDriverRequest ->",
                                          "connect driverRequest -> coDriverRequest;\n  connect coDriverRequest ->")},
    "MA08": {"WindowSystem.arc": _replace("connect coDriverRequest ->",
                                          "connect driverRequest -> WindowWatchDog.driverStat;\n"
                                          "  connect coDriverRequest ->")},
    "MA09": {"FourWindowVehicle.archv": _replace("    FourWindows;",
                                                 "    FourWindows;\n  WindowSystem.WindowWatchDog.MoreWindowsDog"
                                                 " realizedBy FourWindowsDog;")},
    "MA10": {"TwoMore.archv": "variant TwoMore realizes WindowSystem.MoreWindows {\n}\n",
             "FourWindowSystem.archv": _replace("FourWindows;", "FourWindows;\n  WindowSystem.MoreWindows "
                                                                "realizedBy TwoMore;")},
    "MA11": {"FourWindowVehicle.archv": _replace("LockController.FourDoorsLock",
                                                 "LockController.NoSuchVariant")},
    "MA12": {"FourWindowsDog.archv": _replace("in WindowStatus rearRightStat;",
                                              "in WindowStatus rearRightStat,\n    in WindowStatus pos~extra;")},
    "MA13": {"WindowWinder.arc": _replace("out WindowStatus;", "out WindowStatus;\n  component WindowSystem ws;")},
    "MA14": {"CycleA.archv": "abstract variantConfig CycleA for Car extends CycleB {\n}\n",
             "CycleB.archv": "abstract variantConfig CycleB for Car extends CycleA {\n}\n"},
    "MA15": {"TwoMore.archv": "variant TwoMore realizes WindowSystem.MoreWindows {\n}\n",
             "BaseWindows.archv": "abstract variantConfig BaseWindows for WindowSystem {\n"
                                  "  WindowSystem.MoreWindows realizedBy FourWindows;\n}\n",
             "OtherWindows.archv": "variantConfig OtherWindows for WindowSystem extends BaseWindows {\n"
                               "  WindowSystem.MoreWindows realizedBy TwoMore;\n}\n"},
    "MA16": {"WindowSystem.arc": _replace("out WindowStatus;", "out WindowStatus,\n    out WindowStatus extraStatus;")},
    "MA17": {"WindowSystem.arc": _replace("MoreWindows [0..1]", "MoreWindows [0..2]"),
             "Dup.archv": "variant Dup realizes WindowSystem.MoreWindows {\n"
                          "  port\n    in WinderRequest rearLeftRequest;\n}\n",
             "FourWindowSystem.archv": _replace("FourWindows;", "FourWindows;\n  WindowSystem.MoreWindows "
                                                                "realizedBy Dup;")},
    "MA18": {"Vehicle.archv": "variantConfig WindowsOnly for Car {\n"
                              "  Car.WindowController realizedBy FourWindowVehicle;\n}\n"},
}


def mutate(code: str) -> dict[str, str]:
    texts = corpus_texts()
    for name, edit in MUTANTS[code].items():
        texts[name] = edit(texts[name]) if callable(edit) else edit
    return {str(CORPUS / name): text for name, text in texts.items()}
