"""The three classification-task queries, parsed and executed."""
from entrotree import data
from entrotree.cli import format_table
from entrotree.dmql import Catalog, parse, pretty_print, run
from entrotree.errors import DmqlError
from entrotree.tree import render

h = data.region_hierarchy()

q = parse(data.example_query("2.1"))
print(pretty_print(q))
result = run(data.example_query("2.1"), Catalog({"edu_dataset": data.table1()}, [h]))
print("\n".join(format_table(result.table)))
print()

print(pretty_print(parse(data.example_query("4.1"))))
result = run(data.example_query("4.1"), Catalog({"edu_dataset": data.table3()}, [h]))
print("\n".join(render(result.tree)))
print("\n".join(result.merge_log))
print()

print(pretty_print(parse(data.example_query("5.1"))))
result = run(data.example_query("5.1"), Catalog({"edu_dataset": data.edu_regions()}, [h]))
print("\n".join(render(result.tree, count_attr="region")))
print()

for bad in ["classify T in relevance to c", "classify T according to priority {x(a) attribute values in relevance to c from d"]:
    try:
        parse(bad)
    except DmqlError as e:
        print(type(e).__name__, e)
