"""Model texts shared by several test modules."""

from mutants import CORPUS, corpus_texts

DOOR = {
    "door/Winder.arc": "component Winder {\n  port\n    in Req request,\n    out Status status;\n}\n",
    "door/Door.arc": "component Door {\n  variationPoint: Winders [0..2];\n}\n",
    "door/Side.archv": (
        "variant Side(pos) realizes Door.Winders {\n"
        "  port\n    in Req pos~req,\n    out Status pos~status;\n"
        "  component Winder pos~winder;\n"
        "  connect pos~req -> pos~winder.request;\n"
        "  connect pos~winder.status -> pos~status;\n"
        "}\n"),
    "door/BothSides.archv": (
        "variantConfig BothSides for Door {\n"
        "  Door.Winders realizedBy Side(left);\n"
        "  Door.Winders realizedBy Side(right);\n"
        "}\n"),
}

DOOR_WRONG_ARITY = {**DOOR, "door/BothSides.archv": (
    "variantConfig BothSides for Door {\n  Door.Winders realizedBy Side;\n}\n")}

# an abstract base plus a child extension, and the same product in one piece
CAR_LAYERED = {
    "BaseCar.archv": ("abstract variantConfig BaseCar for Car {\n"
                      "  Car.LockController realizedBy FourDoorsLock;\n}\n"),
    "FullCar.archv": ("variantConfig FullCar for Car extends BaseCar {\n"
                      "  Car.WindowController realizedBy FourWindowVehicle;\n}\n"),
    "FlatCar.archv": ("variantConfig FlatCar for Car {\n"
                      "  Car.LockController realizedBy FourDoorsLock;\n"
                      "  Car.WindowController realizedBy FourWindowVehicle;\n}\n"),
}

CAR_RESELECT = {
    "OtherLock.archv": "variant OtherLock realizes Car.LockController {\n}\n",
    "Reselect.archv": ("variantConfig Reselect for Car extends BaseCar {\n"
                       "  Car.LockController realizedBy OtherLock;\n}\n"),
}


def with_corpus(extra: dict) -> dict:
    texts = {str(CORPUS / n): t for n, t in corpus_texts().items()}
    texts.update({str(CORPUS / n): t for n, t in extra.items()})
    return texts
