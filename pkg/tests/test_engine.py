import io
import json
import logging
import os

import pytest

from socprimes.engine import (
    DOMAIN_START,
    CheckpointError,
    Counters,
    SearchConfig,
    _commit,
    _RunState,
    resume,
    search,
)
from socprimes.primes import PrimeRange
from socprimes.verifier import CollisionWitness, ScanStrategy, factorial_mod


def run_search(tmp_path, lo, hi, name="out.jsonl", **kw):
    cfg = SearchConfig(
        range=PrimeRange(lo, hi, kw.pop("segment_size", 1024)),
        output_path=str(tmp_path / name),
        **kw,
    )
    return search(cfg)


def read_records(path):
    with open(path, encoding="ascii") as fh:
        return [json.loads(line) for line in fh]


class TestCounters:
    def test_partition_and_derived(self):
        c = Counters(examined=10, rejected_mod8=4, rejected_legendre5=2,
                     rejected_cubic=1, collisions=3)
        assert c.partitioned()
        assert c.stage1_survivors == 4
        assert c.stage2_survivors == 3
        c.examined += 1
        assert not c.partitioned()

    def test_merge_and_roundtrip(self):
        c = Counters()
        c.merge((5, 1, 1, 1, 1, 1, 0, 0))
        c.merge((2, 0, 0, 0, 0, 1, 1, 0))
        assert c == Counters(examined=7, rejected_mod8=1, rejected_legendre5=1,
                             rejected_legendre23=1, rejected_cubic=1,
                             collisions=2, neg_half_hits=1)
        assert Counters.from_dict(c.as_dict()) == c

    def test_from_dict_rejects_gaps(self):
        with pytest.raises(CheckpointError):
            Counters.from_dict({"examined": 3})


class TestFrozenRange:
    def test_below_1000(self, tmp_path):
        report = run_search(tmp_path, 7, 1000)
        c = report.counters
        assert c.examined == 165
        assert c.rejected_mod8 == 123
        assert c.rejected_legendre5 == 20
        assert c.rejected_legendre23 == 12
        assert c.rejected_cubic == 2
        assert c.collisions == 8
        assert c.neg_half_hits == 0
        assert c.socialist == 0
        assert report.socialist_primes == []
        assert report.complete and report.completed_through == 1000
        assert not report.resumed

        records = read_records(report.output_path)
        assert [r["p"] for r in records] == [13, 173, 197, 277, 317, 397, 653, 853, 877, 997]
        by_p = {r["p"]: r for r in records}
        assert by_p[197] == {"p": 197, "outcome": "RejectedCubic", "witness": {"y": 36, "x": 4}}
        assert by_p[317]["witness"] == {"y": 139, "x": 19}
        assert by_p[13] == {"p": 13, "outcome": "Collision",
                            "witness": {"j": 4, "k": 9, "residue": 11}}
        assert by_p[997]["witness"] == {"j": 54, "k": 72, "residue": 520}

    def test_records_survive_independent_recheck(self, tmp_path):
        report = run_search(tmp_path, 7, 5000)
        records = read_records(report.output_path)
        assert len(records) == report.counters.stage1_survivors
        for rec in records:
            p, w = rec["p"], rec["witness"]
            if rec["outcome"] == "RejectedCubic":
                prod = 1
                for i in range(6):
                    prod = prod * (w["x"] + i) % p
                assert prod == 1, p
            elif rec["outcome"] == "Collision":
                assert CollisionWitness(p, w["j"], w["k"], w["residue"]).recheck(), p
            else:
                pytest.fail(f"unexpected outcome below 5000: {rec}")

    def test_empty_and_clamped_ranges(self, tmp_path):
        empty = run_search(tmp_path, 100, 100, name="empty.jsonl")
        assert empty.counters == Counters()
        assert empty.complete
        assert read_records(empty.output_path) == []

        clamped = run_search(tmp_path, 2, 20, name="clamped.jsonl")
        assert clamped.lo == DOMAIN_START
        assert clamped.counters.examined == 5  # 7 11 13 17 19


class TestDeterminism:
    def test_segmentation_invariance(self, tmp_path):
        a = run_search(tmp_path, 7, 20000, name="a.jsonl", segment_size=512)
        b = run_search(tmp_path, 7, 20000, name="b.jsonl", segment_size=7000)
        assert a.counters == b.counters
        assert open(a.output_path, "rb").read() == open(b.output_path, "rb").read()

    def test_thread_invariance(self, tmp_path):
        a = run_search(tmp_path, 7, 20000, name="a.jsonl", segment_size=2048, threads=1)
        b = run_search(tmp_path, 7, 20000, name="b.jsonl", segment_size=2048, threads=3)
        assert a.counters == b.counters
        assert open(a.output_path, "rb").read() == open(b.output_path, "rb").read()


class TestConfigValidation:
    def test_bad_values(self, tmp_path):
        rng = PrimeRange(7, 100)
        out = str(tmp_path / "x.jsonl")
        with pytest.raises(ValueError):
            search(SearchConfig(rng, out, threads=0))
        with pytest.raises(ValueError):
            search(SearchConfig(rng, out, checkpoint_interval=0))
        with pytest.raises(ValueError):
            search(SearchConfig(rng, out, strategy=ScanStrategy(escalate=False)))
        with pytest.raises(ValueError):
            search(SearchConfig(rng, out, stop_after_segments=1))
        with pytest.raises(ValueError):
            search(SearchConfig(rng, out, stop_after_segments=0,
                                checkpoint_path=str(tmp_path / "c.json")))


class TestCheckpointResume:
    def full_and_stopped(self, tmp_path, threads_resume=1):
        full = run_search(tmp_path, 7, 9000, name="full.jsonl", segment_size=512)

        ckpt = str(tmp_path / "part.ckpt")
        part_out = str(tmp_path / "part.jsonl")
        cfg = SearchConfig(
            range=PrimeRange(7, 9000, 512),
            output_path=part_out,
            checkpoint_path=ckpt,
            checkpoint_interval=1,
            stop_after_segments=3,
        )
        stopped = search(cfg)
        assert not stopped.complete
        assert stopped.completed_through == 7 + 3 * 512

        resumed = resume(ckpt, threads=threads_resume)
        return full, stopped, resumed

    def test_stop_then_resume_reproduces_bytes(self, tmp_path):
        full, _stopped, resumed = self.full_and_stopped(tmp_path)
        assert resumed.resumed and resumed.complete
        assert resumed.counters == full.counters
        assert (open(resumed.output_path, "rb").read()
                == open(full.output_path, "rb").read())

    def test_resume_with_more_threads(self, tmp_path):
        full, _stopped, resumed = self.full_and_stopped(tmp_path, threads_resume=2)
        assert resumed.counters == full.counters
        assert (open(resumed.output_path, "rb").read()
                == open(full.output_path, "rb").read())

    def test_resume_truncates_torn_tail(self, tmp_path):
        full, stopped, _ = self.full_and_stopped(tmp_path)
        # simulate a crash mid-write: garbage past the committed offset
        with open(stopped.output_path, "ab") as fh:
            fh.write(b'{"p": 999999, "outcome": "Colli')
        resumed = resume(str(tmp_path / "part.ckpt"))
        assert resumed.counters == full.counters
        assert (open(resumed.output_path, "rb").read()
                == open(full.output_path, "rb").read())

    def test_resume_of_complete_run_is_noop(self, tmp_path):
        ckpt = str(tmp_path / "c.json")
        done = run_search(tmp_path, 7, 1000, checkpoint_path=ckpt)
        before = open(done.output_path, "rb").read()
        again = resume(ckpt)
        assert again.complete and again.resumed
        assert again.counters == done.counters
        assert open(done.output_path, "rb").read() == before

    def test_resume_in_single_segment_steps(self, tmp_path):
        full = run_search(tmp_path, 7, 3000, name="full.jsonl", segment_size=256)
        ckpt = str(tmp_path / "steps.ckpt")
        cfg = SearchConfig(
            range=PrimeRange(7, 3000, 256),
            output_path=str(tmp_path / "steps.jsonl"),
            checkpoint_path=ckpt,
            checkpoint_interval=1,
            stop_after_segments=1,
        )
        report = search(cfg)
        hops = 1
        while not report.complete:
            report = resume(ckpt, stop_after_segments=1)
            hops += 1
        assert hops == 12  # ceil(2993 / 256)
        assert report.counters == full.counters
        assert (open(str(tmp_path / "steps.jsonl"), "rb").read()
                == open(full.output_path, "rb").read())

    def test_checkpoint_contents(self, tmp_path):
        ckpt = str(tmp_path / "c.json")
        report = run_search(tmp_path, 7, 1000, checkpoint_path=ckpt)
        payload = json.loads(open(ckpt, encoding="ascii").read())
        assert payload["version"] == 1
        assert (payload["lo"], payload["hi"]) == (7, 1000)
        assert payload["completed_through"] == 1000
        assert payload["counters"] == report.counters.as_dict()
        assert payload["socialist"] == []
        assert payload["output_offset"] == len(open(report.output_path, "rb").read())


class TestCheckpointValidation:
    def make_checkpoint(self, tmp_path):
        ckpt = str(tmp_path / "c.json")
        cfg = SearchConfig(
            range=PrimeRange(7, 3000, 512),
            output_path=str(tmp_path / "o.jsonl"),
            checkpoint_path=ckpt,
            checkpoint_interval=1,
            stop_after_segments=2,
        )
        search(cfg)
        return ckpt, json.loads(open(ckpt).read())

    def rewrite(self, ckpt, payload):
        with open(ckpt, "w") as fh:
            json.dump(payload, fh)

    def test_bad_version(self, tmp_path):
        ckpt, payload = self.make_checkpoint(tmp_path)
        payload["version"] = 99
        self.rewrite(ckpt, payload)
        with pytest.raises(CheckpointError):
            resume(ckpt)

    def test_unpartitioned_counters(self, tmp_path):
        ckpt, payload = self.make_checkpoint(tmp_path)
        payload["counters"]["examined"] += 1
        self.rewrite(ckpt, payload)
        with pytest.raises(CheckpointError):
            resume(ckpt)

    def test_high_water_outside_range(self, tmp_path):
        ckpt, payload = self.make_checkpoint(tmp_path)
        payload["completed_through"] = payload["hi"] + 1
        self.rewrite(ckpt, payload)
        with pytest.raises(CheckpointError):
            resume(ckpt)

    def test_not_json(self, tmp_path):
        ckpt, _ = self.make_checkpoint(tmp_path)
        open(ckpt, "w").write("not json{")
        with pytest.raises(CheckpointError):
            resume(ckpt)

    def test_missing_checkpoint(self, tmp_path):
        with pytest.raises(CheckpointError):
            resume(str(tmp_path / "absent.json"))

    def test_output_shorter_than_offset(self, tmp_path):
        ckpt, payload = self.make_checkpoint(tmp_path)
        open(payload["output_path"], "wb").write(b"{}")
        if payload["output_offset"] <= 2:
            pytest.skip("stopped leg committed no records; offset too small to undercut")
        with pytest.raises(CheckpointError):
            resume(ckpt)

    def test_output_missing(self, tmp_path):
        ckpt, payload = self.make_checkpoint(tmp_path)
        os.remove(payload["output_path"])
        if payload["output_offset"] == 0:
            pytest.skip("offset 0 legitimately recreates the file")
        with pytest.raises(CheckpointError):
            resume(ckpt)


class TestSocialistPath:
    def test_commit_logs_and_tracks(self, caplog):
        state = _RunState(lo=7, hi=100, counters=Counters(), completed_through=7,
                          socialist=[], bytes_written=0, prior_elapsed=0.0)
        out = io.BytesIO()
        record = {"p": 5, "outcome": "Socialist"}
        with caplog.at_level(logging.CRITICAL, logger="socprimes.engine"):
            _commit(state, out, (1, 0, 0, 0, 0, 0, 0, 1), [record], seg_hi=100)
        assert state.socialist == [5]
        assert "SOCIALIST" in caplog.text
        assert json.loads(out.getvalue().decode("ascii")) == record
        assert state.bytes_written == len(out.getvalue())
        assert state.counters.socialist == 1

    def test_verdict_five_is_socialist_shaped(self):
        # the scan machinery itself must keep recognising the one known case
        from socprimes.verifier import ScanMode, VerdictKind, verify_distinct

        v = verify_distinct(5, ScanStrategy(mode=ScanMode.NAIVE_BITSET))
        assert v.kind is VerdictKind.SOCIALIST
        assert factorial_mod(4, 5) == 4
