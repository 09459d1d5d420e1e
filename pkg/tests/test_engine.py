import random
from dataclasses import replace
from datetime import date
from decimal import Decimal

import pytest

from src.engine import (
    Aggregate,
    Database,
    GroupAggregate,
    HashJoin,
    Meter,
    QueryMetrics,
    Scan,
    Table,
    Derive,
    DerivedField,
    FieldKind,
    FieldSpec,
    Filter,
    define_table,
    field_equals,
    group_aggregate,
    hash_join,
    run_metered,
    scan,
)
from src.engine.schema import date_field, enum, integer, text
from src.engine.table import table_stats
from src.errors import DuplicateKeyError, PlanError, RowError, SchemaError


@pytest.fixture
def people():
    schema = define_table(
        "PEOPLE",
        [text("id", 3), text("name", 10), integer("age", 3), text("city", 4)],
        primary_key=["id"],
    )
    return Table(schema, [
        ("p1", "Ani", 20, "MDN"),
        ("p2", "Budi", 31, "BJI"),
        ("p3", "Citra", 20, "MDN"),
        ("p4", "Dewi", 45, "XXX"),
    ])


@pytest.fixture
def cities():
    schema = define_table("CITY", [text("city", 4), text("name", 12)], primary_key=["city"])
    return Table(schema, [("MDN", "Medan"), ("BJI", "Binjai")])


class TestSchema:
    def test_record_length_is_sum_of_widths(self, people):
        assert people.schema.record_length == 20
        assert people.total_bytes == 80
        assert people.stats() == (20, 4, 80)
        assert table_stats(people).total_bytes == people.total_bytes

    def test_rejects_duplicate_fields(self):
        with pytest.raises(SchemaError):
            define_table("T", [text("a", 1), text("a", 2)])

    def test_rejects_unknown_key(self):
        with pytest.raises(SchemaError):
            define_table("T", [text("a", 1)], primary_key=["b"])

    def test_rejects_zero_width(self):
        with pytest.raises(SchemaError):
            FieldSpec("a", FieldKind.TEXT, 0)

    def test_enum_values_must_fit(self):
        with pytest.raises(SchemaError):
            enum("semester", 3, ("Ganjil", "Genap"))

    def test_date_fields_are_eight_wide(self):
        assert date_field("tgl").width == 8
        with pytest.raises(SchemaError):
            FieldSpec("tgl", FieldKind.DATE, 10)

    def test_check_values(self):
        name = text("name", 4)
        name.check("abcd")
        with pytest.raises(RowError):
            name.check("abcde")
        with pytest.raises(RowError):
            name.check("a|b")
        with pytest.raises(RowError):
            integer("n", 2).check(100)
        with pytest.raises(RowError):
            integer("n", 2).check(True)
        with pytest.raises(RowError):
            FieldSpec("d", FieldKind.DECIMAL, 6).check(1.5)
        FieldSpec("d", FieldKind.DECIMAL, 6).check(Decimal("1.5"))

    def test_pad_and_decode(self):
        day = date_field("tgl")
        assert day.pad(date(2010, 2, 1)) == "20100201"
        assert day.decode("20100201") == date(2010, 2, 1)
        assert text("kd", 4).pad("ab") == "ab  "
        with pytest.raises(RowError):
            integer("n", 3).decode("x1")


class TestTable:
    def test_duplicate_key_rejected(self, people):
        with pytest.raises(DuplicateKeyError):
            people.insert(("p1", "Other", 1, "MDN"))

    def test_key_not_enforced(self):
        schema = define_table("F", [text("k", 1), integer("v", 2)], primary_key=["k"], enforce_key=False)
        table = Table(schema, [("a", 1), ("a", 2)])
        assert table.record_count == 2

    def test_mapping_rows(self, people):
        people.insert({"id": "p5", "name": "Eko", "age": 22, "city": "MDN"})
        with pytest.raises(RowError):
            people.insert({"id": "p6", "name": "Fajar", "age": 22})

    def test_replace_keeps_key(self, people):
        people.replace(0, ("p1", "Ani", 21, "MDN"))
        assert people.rows[0][2] == 21
        with pytest.raises(RowError):
            people.replace(0, ("p9", "Ani", 21, "MDN"))

    def test_database_lookup(self, people, cities):
        db = Database("oltp", [people, cities])
        assert db.names == ("PEOPLE", "CITY")
        assert db.total_records == 6
        with pytest.raises(SchemaError):
            db["NOPE"]
        with pytest.raises(SchemaError):
            db.add(Table(cities.schema))


class TestOperators:
    def test_scan_meters_whole_table(self, people):
        meter = Meter()
        rows = list(scan(people, field_equals("city", "MDN"), meter))
        assert [r[0] for r in rows] == ["p1", "p3"]
        assert meter.records_scanned == 4
        assert meter.bytes_scanned == 80

    def test_scan_with_empty_result_still_charged(self, people):
        meter = Meter()
        assert list(scan(people, field_equals("city", "nowhere"), meter)) == []
        assert meter.bytes_scanned == people.total_bytes

    def test_hash_join_renames_collisions(self, people, cities):
        joined = hash_join(scan(people), scan(cities), [("city", "city")])
        assert joined.names == ("id", "name", "age", "city", "CITY.city", "CITY.name")
        rows = sorted(joined.rows)
        assert len(rows) == 3
        assert rows[0] == ("p1", "Ani", 20, "MDN", "MDN", "Medan")

    def test_hash_join_same_rows_whichever_side_builds(self, people, cities):
        small_left = hash_join(scan(cities), scan(people), [("city", "city")])
        big_left = hash_join(scan(people), scan(cities), [("city", "city")])
        assert sorted((r[0], r[2]) for r in small_left.rows) == sorted((r[3], r[0]) for r in big_left.rows)

    def test_hash_join_checks_kinds(self, people, cities):
        with pytest.raises(PlanError):
            hash_join(scan(people), scan(cities), [("age", "city")])
        with pytest.raises(PlanError):
            hash_join(scan(people), scan(cities), [])

    def test_group_aggregate_sorted_by_key(self, people):
        result = group_aggregate(
            scan(people),
            ["city"],
            [Aggregate("count", alias="n"), Aggregate("sum", "age", "total"), Aggregate("count_distinct", "age", "ages")],
        )
        assert list(result.rows) == [("BJI", 1, 31, 1), ("MDN", 2, 40, 1), ("XXX", 1, 45, 1)]
        assert result.schema.field_names == ("city", "n", "total", "ages")

    def test_group_aggregate_empty_input(self, people):
        result = group_aggregate(scan(people, field_equals("city", "none")), ["city"], [Aggregate("count")])
        assert result.record_count == 0

    def test_sum_needs_numbers(self, people):
        with pytest.raises(PlanError):
            group_aggregate(scan(people), ["city"], [Aggregate("sum", "name")])

    def test_unknown_aggregate(self):
        with pytest.raises(PlanError):
            Aggregate("median", "age")
        with pytest.raises(PlanError):
            Aggregate("sum")


class TestPlans:
    def test_metrics_of_join_aggregate(self, people, cities):
        plan = GroupAggregate(
            HashJoin(Scan(people), Scan(cities), [("city", "city")]),
            ["CITY.name"],
            [Aggregate("count", alias="n")],
        )
        result, metrics = run_metered(plan)
        assert list(result.rows) == [("Binjai", 1), ("Medan", 2)]
        assert metrics.tables_used == 2
        assert metrics.records_scanned == 6
        assert metrics.record_length_sum == 20 + 16
        assert metrics.bytes_scanned == 80 + 32
        assert metrics.rows_produced == 2
        assert metrics.wall_time >= 0

    def test_self_join_counts_table_once(self, people):
        plan = HashJoin(Scan(people), Scan(people), [("city", "city")])
        result, metrics = run_metered(plan)
        assert metrics.tables_used == 1
        assert metrics.record_length_sum == 20
        assert metrics.records_scanned == 8
        assert result.record_count == 4 + 1 + 1

    def test_derive_and_filter(self, people):
        plan = Filter(
            Derive(Scan(people), [DerivedField(integer("decade", 3), ("age",), lambda age: age // 10 * 10)]),
            field_equals("decade", 20),
        )
        result, metrics = run_metered(plan)
        assert [row[0] for row in result.rows] == ["p1", "p3"]
        assert result.schema.field_names[-1] == "decade"
        assert metrics.records_scanned == 4

    def test_metrics_round_trip(self):
        metrics = QueryMetrics(2, 10, 50, 500, 0.5, 3)
        assert QueryMetrics.from_dict(metrics.to_dict()) == metrics


def _random_table(rng, name, n_rows, n_keys):
    schema = define_table(name, [integer("id", 5), integer("k", 3), integer("v", 5)], primary_key=["id"])
    return Table(schema, [(i, rng.randrange(n_keys), rng.randrange(10_000)) for i in range(n_rows)])


class TestOperatorProperties:
    @pytest.mark.parametrize("seed", range(6))
    def test_hash_join_matches_nested_loop(self, seed):
        rng = random.Random(seed)
        left = _random_table(rng, "L", rng.randint(0, 1000), rng.randint(1, 60))
        right = _random_table(rng, "R", rng.randint(0, 1000), rng.randint(1, 60))
        joined = hash_join(scan(left), scan(right), [("k", "k")])
        expected = [a + b for a in left.rows for b in right.rows if a[1] == b[1]]
        assert sorted(joined.rows) == sorted(expected)

    @pytest.mark.parametrize("seed", range(6))
    def test_group_counts_sum_to_input_size(self, seed):
        rng = random.Random(seed)
        table = _random_table(rng, "T", rng.randint(0, 1000), rng.randint(1, 40))
        result = group_aggregate(scan(table), ["k"], [Aggregate("count", alias="n")])
        assert sum(row[-1] for row in result.rows) == table.record_count
        assert [row[0] for row in result.rows] == sorted({row[1] for row in table.rows})

    def test_metrics_repeat_except_time(self):
        rng = random.Random(11)
        left, right = _random_table(rng, "L", 500, 20), _random_table(rng, "R", 300, 20)
        plan = GroupAggregate(HashJoin(Scan(left), Scan(right), [("k", "k")]), ["k"], [Aggregate("count", alias="n")])
        first_rows, first = run_metered(plan)
        second_rows, second = run_metered(plan)
        assert replace(first, wall_time=0.0) == replace(second, wall_time=0.0)
        assert list(first_rows.rows) == list(second_rows.rows)
