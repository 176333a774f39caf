#!/usr/bin/env python3
"""Regenerates the benchmark suite files under fixtures/suites/.

The simple suite is template-expanded so the task list stays easy to audit
and rebalance; the complex and robot suites are short enough to keep as
literals here. Output is deterministic: run it twice, get identical bytes.
"""

import json
import pathlib

OUT = pathlib.Path(__file__).resolve().parent.parent / "suites"


def task(tid, text, layout, success, max_steps, dialogue=None):
    t = {
        "id": tid,
        "goal_text": text,
        "layout": layout,
        "success": success,
        "max_steps": max_steps,
    }
    if dialogue:
        t["dialogue"] = dialogue
    return t


def simple_tasks():
    tasks = []
    k = "kitchen_small"
    b = "bedroom_small"

    # Plain pick-and-place in the kitchen. Initial placements: apple on the
    # countertop, knife on the table, bowl and mug in the cabinet, egg in
    # the fridge; pairs that would already be satisfied are left out.
    kitchen_puts = [
        ("apple-1", "apple", "fridge-1", "the fridge"),
        ("apple-1", "apple", "table-1", "the table"),
        ("apple-1", "apple", "cabinet-1", "the cabinet"),
        ("apple-1", "apple", "sink-1", "the sink"),
        ("apple-1", "apple", "microwave-1", "the microwave"),
        ("knife-1", "knife", "countertop-1", "the countertop"),
        ("knife-1", "knife", "sink-1", "the sink"),
        ("knife-1", "knife", "cabinet-1", "the cabinet"),
        ("bowl-1", "bowl", "table-1", "the table"),
        ("bowl-1", "bowl", "countertop-1", "the countertop"),
        ("bowl-1", "bowl", "sink-1", "the sink"),
        ("mug-1", "mug", "table-1", "the table"),
        ("mug-1", "mug", "countertop-1", "the countertop"),
        ("mug-1", "mug", "microwave-1", "the microwave"),
        ("egg-1", "egg", "table-1", "the table"),
        ("egg-1", "egg", "countertop-1", "the countertop"),
        ("egg-1", "egg", "sink-1", "the sink"),
        ("egg-1", "egg", "microwave-1", "the microwave"),
    ]
    for item, noun, recep, where in kitchen_puts:
        tasks.append((f"put the {noun} in {where}", k,
                      f"(and (in {item} {recep}))"))

    for item, noun, recep, where in [
        ("bowl-1", "bowl", "cabinet-1", "the cabinet"),
        ("bowl-1", "bowl", "table-1", "the table"),
        ("mug-1", "mug", "countertop-1", "the countertop"),
        ("apple-1", "apple", "table-1", "the table"),
    ]:
        tasks.append((f"clean the {noun} and put it in {where}", k,
                      f"(and (isclean {item}) (in {item} {recep}))"))

    for item, noun, recep, where in [
        ("egg-1", "egg", "table-1", "the table"),
        ("egg-1", "egg", "countertop-1", "the countertop"),
        ("apple-1", "apple", "table-1", "the table"),
        ("mug-1", "mug", "countertop-1", "the countertop"),
    ]:
        tasks.append((f"heat the {noun} and put it on {where}", k,
                      f"(and (ishot {item}) (in {item} {recep}))"))

    for item, noun, recep, where in [
        ("apple-1", "apple", "fridge-1", "the fridge"),
        ("apple-1", "apple", "countertop-1", "the countertop"),
        ("mug-1", "mug", "cabinet-1", "the cabinet"),
        ("egg-1", "egg", "countertop-1", "the countertop"),
    ]:
        tasks.append((f"cool the {noun} and put it in {where}", k,
                      f"(and (iscold {item}) (in {item} {recep}))"))

    tasks.append(("put the apple and the egg in the fridge", k,
                  "(and (in apple-1 fridge-1) (in egg-1 fridge-1))"))
    tasks.append(("put the bowl and the mug on the table", k,
                  "(and (in bowl-1 table-1) (in mug-1 table-1))"))
    tasks.append(("examine the apple under the desklamp", k,
                  "(and (holding apple-1) (toggled desklamp-1))"))
    tasks.append(("examine the knife under the desklamp", k,
                  "(and (holding knife-1) (toggled desklamp-1))"))

    # Bedroom variants. Initial placements: cd on the desk, keychain in the
    # drawer, creditcard in the safe, pen on the shelf, book on the bed; the
    # cd/pen/book group gets shuffled per seed over the desk/shelf/bed slots,
    # so those three items only ever target receptacles outside the slots.
    bedroom_puts = [
        ("cd-1", "cd", "drawer-1", "the drawer"),
        ("cd-1", "cd", "safe-1", "the safe"),
        ("cd-1", "cd", "garbagecan-1", "the garbage can"),
        ("keychain-1", "keychain", "desk-1", "the desk"),
        ("keychain-1", "keychain", "safe-1", "the safe"),
        ("creditcard-1", "creditcard", "drawer-1", "the drawer"),
        ("creditcard-1", "creditcard", "desk-1", "the desk"),
        ("creditcard-1", "creditcard", "shelf-1", "the shelf"),
        ("pen-1", "pen", "drawer-1", "the drawer"),
        ("pen-1", "pen", "safe-1", "the safe"),
        ("book-1", "book", "garbagecan-1", "the garbage can"),
        ("book-1", "book", "drawer-1", "the drawer"),
    ]
    for item, noun, recep, where in bedroom_puts:
        tasks.append((f"put the {noun} in {where}", b,
                      f"(and (in {item} {recep}))"))

    tasks.append(("put the pen and the cd on the desk", b,
                  "(and (in pen-1 desk-1) (in cd-1 desk-1))"))
    tasks.append(("put the book and the cd on the shelf", b,
                  "(and (in book-1 shelf-1) (in cd-1 shelf-1))"))
    tasks.append(("examine the cd under the desklamp", b,
                  "(and (holding cd-1) (toggled desklamp-2))"))
    tasks.append(("examine the book under the desklamp", b,
                  "(and (holding book-1) (toggled desklamp-2))"))

    return [task(f"simple-{i:03d}", text, layout, success, 40)
            for i, (text, layout, success) in enumerate(tasks)]


def complex_tasks():
    t = "thor_kitchen"
    data = [
        # Solvable with the planning domain alone once objects are in view.
        ("put the knife in the cabinet", "(and (in knife-1 cabinet-1))"),
        ("bring the pan to the sink", "(and (in pan-1 sinkbasin-1))"),
        ("put the egg on the dining table", "(and (in egg-2 diningtable-1))"),
        # The rest hinge on appliance physics the domain does not model.
        ("slice the tomato", "(and (issliced tomato-1-slice-1))"),
        ("slice the apple", "(and (issliced apple-1-slice-1))"),
        ("cook the potato", "(and (iscooked potato-1))"),
        ("cook the egg", "(and (iscooked egg-2))"),
        ("chill the apple", "(and (iscold apple-1))"),
        ("chill the tomato", "(and (iscold tomato-1))"),
        ("wash the plate", "(and (isclean plate-1))"),
        ("wash the mug", "(and (isclean mug-1))"),
        ("fill the mug with coffee", "(and (isfilled mug-1))"),
        ("serve a cooked potato on the dining table",
         "(and (iscooked potato-1) (in potato-1 diningtable-1))"),
        ("chill the apple and leave it on the countertop",
         "(and (iscold apple-1) (in apple-1 countertop-1))"),
        ("wash the plate and put it in the cabinet",
         "(and (isclean plate-1) (in plate-1 cabinet-1))"),
        ("make a cold slice of tomato", "(and (iscold tomato-1-slice-1))"),
    ]
    return [task(f"complex-{i:02d}", text, t, success, 60)
            for i, (text, success) in enumerate(data)]


def robot_tasks():
    o = "robot_office"
    swap = [{
        "human": "alice",
        "wants": "cola-1",
        "yields": "travel-bag-1",
        "demand": "Bring me a cola first, then we can talk about the bag.",
        "yield": "Here you go, take the bag.",
    }]
    data = [
        ("bring the box to desk-1", "(and (in box-1 desk-1))", None),
        ("put the stapler on bench-1", "(and (in stapler-1 bench-1))", None),
        ("inspect the book", "(and (inspected book-1))", None),
        ("take a seat at bench-1", "(and (at-agent bench-1) (sitting))", None),
        ("bring the cola to alice at bench-2", "(and (in cola-1 bench-2))", None),
        ("get my travel bag from alice and put it on desk-1",
         "(and (in travel-bag-1 desk-1))", swap),
        ("fetch alice's travel bag", "(and (holding travel-bag-1))", swap),
        ("ask alice for the bag, then store it on the shelf",
         "(and (in travel-bag-1 shelf-1))", swap),
        ("retrieve the travel bag and drop it at bench-1",
         "(and (in travel-bag-1 bench-1))", swap),
        ("trade the cola for alice's bag and leave the bag on desk-2",
         "(and (in cola-1 bench-2) (in travel-bag-1 desk-2))", swap),
    ]
    return [task(f"robot-{i:02d}", text, o, success, 60, dialogue)
            for i, (text, success, dialogue) in enumerate(data)]


def write(name, action_set, tasks):
    doc = {"name": name, "action_set": action_set, "tasks": tasks}
    path = OUT / f"{name}.json"
    path.write_text(json.dumps(doc, indent=2) + "\n")
    print(f"wrote {path} ({len(tasks)} tasks)")


def main():
    write("simple", "alfworld", simple_tasks())
    write("complex", "thor", complex_tasks())
    write("robot", "robot", robot_tasks())


if __name__ == "__main__":
    main()
