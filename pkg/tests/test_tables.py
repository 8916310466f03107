import pytest

from covarc.errors import IngestError, UnknownNameError
from covarc.intervals import Interval
from covarc.tables import (
    MASK_NAMES,
    load_default_tables,
    mask_table_csv,
    parse_mask_table,
    parse_severity_table,
    parse_vaccine_table,
    severity_table_csv,
    vaccine_table_csv,
)

MASK, VACCINE, SEVERITY = load_default_tables()


class TestMaskTable:
    def test_spot_values(self):
        assert MASK.ffe["N95 respirator"] == 0.984
        assert MASK.ffe["No Mask"] == 0.0
        assert MASK.ffe["Surgical mask with ties"] == 0.715
        assert MASK.ffe["2-layer woven nylon mask with nose bridge"] == 0.563

    def test_exactly_nineteen_rows(self):
        assert len(MASK.ffe) == 19
        assert set(MASK.ffe) == set(MASK_NAMES)

    def test_unknown_name_lists_valid_names(self):
        with pytest.raises(UnknownNameError) as exc:
            MASK.ffe_of("N96")
        assert "N95 respirator" in str(exc.value)

    def test_missing_row_rejected(self):
        rows = [f'"{name}",0.5' for name in MASK_NAMES if name != "No Mask"]
        with pytest.raises(IngestError, match="exactly the 19"):
            parse_mask_table("mask,ffe\n" + "\n".join(rows) + "\n")

    def test_nonzero_no_mask_rejected(self):
        text = mask_table_csv(MASK).replace("No Mask,0.0", "No Mask,0.25")
        with pytest.raises(IngestError, match="'No Mask'"):
            parse_mask_table(text)


class TestVaccineTable:
    def test_interval_cells(self):
        assert VACCINE.cell("Pfizer (Dose 2)", "delta") == (Interval(0.79, 0.92), False)
        assert VACCINE.cell("Pfizer (Dose 2)", "omicron") == (Interval(0.07, 0.1), False)
        assert VACCINE.cell("Pfizer (Dose 2)", "original") == (Interval(0.95, 0.95), False)

    def test_dash_cells_are_zero_and_flagged(self):
        cell, unknown = VACCINE.cell("Pfizer (Dose 1)", "omicron")
        assert unknown and cell == Interval(0.0, 0.0)
        cell, unknown = VACCINE.cell("Novavax (Dose 1)", "gamma")
        assert unknown and cell == Interval(0.0, 0.0)

    def test_no_vaccine_row_all_zero(self):
        for variant in ("original", "alpha", "beta", "gamma", "delta", "omicron"):
            cell, unknown = VACCINE.cell("No Vaccine", variant)
            assert cell == Interval(0.0, 0.0) and not unknown

    def test_thirteen_rows(self):
        assert len(VACCINE.efficacy) == 13

    def test_unknown_vaccine_name(self):
        with pytest.raises(UnknownNameError, match="unknown vaccine"):
            VACCINE.cell("Sputnik", "delta")

    def test_efficacy_above_one_rejected(self):
        text = vaccine_table_csv(VACCINE).replace("0.87-0.95", "0.87-1.95")
        with pytest.raises(IngestError, match="out of"):
            parse_vaccine_table(text)


class TestSeverityTable:
    def test_age_rates(self):
        assert SEVERITY.hosp_rate_by_age["0-17"] == 0.008
        assert SEVERITY.death_rate_by_age["0-17"] == 0.0015 / 100
        assert SEVERITY.hosp_rate_by_age["18-49"] == 0.025
        assert SEVERITY.death_rate_by_age["18-49"] == 0.07 / 100
        assert SEVERITY.hosp_rate_by_age["65+"] == 0.23
        assert SEVERITY.death_rate_by_age["65+"] == 0.06

    def test_variant_folds(self):
        assert SEVERITY.hosp_variant_fold["delta"] == Interval(1.9, 3.0)
        assert SEVERITY.death_variant_fold["delta"] == Interval(1.5, 3.3)
        assert SEVERITY.hosp_variant_fold["alpha"] == Interval(1.5, 1.6)
        assert SEVERITY.death_variant_fold["gamma"] == Interval(1.2, 1.9)
        assert SEVERITY.hosp_variant_fold["original"] == Interval(1.0, 1.0)

    def test_unpublished_folds_are_neutral_and_flagged(self):
        assert SEVERITY.unknown_hosp_variants == frozenset({"beta", "gamma", "omicron"})
        assert SEVERITY.unknown_death_variants == frozenset({"beta", "omicron"})
        for variant in ("beta", "gamma", "omicron"):
            if variant in SEVERITY.unknown_hosp_variants:
                assert SEVERITY.hosp_variant_fold[variant] == Interval(1.0, 1.0)

    def test_sex_and_chronic_folds(self):
        assert SEVERITY.death_sex_fold["male"] == Interval(1.5, 2.3)
        assert SEVERITY.death_sex_fold["female"] == Interval(1.0, 1.0)
        assert SEVERITY.chronic_hosp_fold == Interval(2.5, 2.5)
        assert SEVERITY.chronic_death_fold == Interval(1.2, 6.9)

    @pytest.mark.parametrize(
        "age,band",
        [(0, "0-17"), (17, "0-17"), (18, "18-49"), (49, "18-49"), (50, "50-64"),
         (64, "50-64"), (65, "65+"), (90, "65+")],
    )
    def test_age_band_edges(self, age, band):
        assert SEVERITY.age_band(age) == band

    def test_fold_times_base_bound_is_enforced(self):
        text = severity_table_csv(SEVERITY).replace("variant,delta,1.9-3.0", "variant,delta,1.9-9.0")
        with pytest.raises(IngestError, match="exceeds 1"):
            parse_severity_table(text)


class TestWriters:
    def test_mask_round_trip(self):
        assert parse_mask_table(mask_table_csv(MASK)) == MASK

    def test_vaccine_round_trip(self):
        assert parse_vaccine_table(vaccine_table_csv(VACCINE)) == VACCINE

    def test_severity_round_trip(self):
        assert parse_severity_table(severity_table_csv(SEVERITY)) == SEVERITY
