import numpy as np
import pytest

from eventemb.checkpoint import (
    Checkpoint,
    CheckpointError,
    build_model,
    checkpoint_bytes,
    load_checkpoint,
    parse_checkpoint,
    save_checkpoint,
)
from eventemb.data import EventTuple
from eventemb.trainer import TrainingConfig
from conftest import make_model, random_event


def make_checkpoint(seed=0, d=6, k=4, n=2):
    model, vocab, rng = make_model(seed=seed, d=d, k=k, n=n)
    cfg = TrainingConfig(d=d, k=k, n=n, epochs=3, seed=seed)
    return (
        Checkpoint(
            config=cfg,
            vocab_words=vocab.words,
            arrays=model.store.params,
            rng_state=rng.bit_generator.state,
            epoch=3,
        ),
        model,
    )


class TestRoundTrip:
    def test_arrays_bit_exact(self, tmp_path):
        ckpt, model = make_checkpoint()
        path = tmp_path / "m.ckpt"
        save_checkpoint(str(path), ckpt)
        loaded = load_checkpoint(str(path))
        assert loaded.epoch == 3
        assert loaded.config == ckpt.config
        assert loaded.vocab_words == ckpt.vocab_words
        assert loaded.rng_state == ckpt.rng_state
        assert set(loaded.arrays) == set(ckpt.arrays)
        for name, arr in ckpt.arrays.items():
            assert np.array_equal(loaded.arrays[name], arr), name

    def test_save_load_save_is_byte_identical(self, tmp_path):
        ckpt, _ = make_checkpoint()
        first = checkpoint_bytes(ckpt)
        loaded = parse_checkpoint(first)
        assert checkpoint_bytes(loaded) == first

    def test_rebuilt_model_embeds_identically(self, tmp_path):
        ckpt, model = make_checkpoint(seed=4)
        rebuilt = build_model(parse_checkpoint(checkpoint_bytes(ckpt)))
        rng = np.random.default_rng(0)
        for _ in range(5):
            event = random_event(model.vocab, rng)
            assert np.array_equal(rebuilt.embed_event(event), model.embed_event(event))

    def test_rng_state_restores_the_generator(self):
        ckpt, _ = make_checkpoint(seed=9)
        restored = np.random.default_rng(0)
        restored.bit_generator.state = parse_checkpoint(checkpoint_bytes(ckpt)).rng_state
        reference = np.random.default_rng(0)
        reference.bit_generator.state = ckpt.rng_state
        assert np.array_equal(restored.standard_normal(8), reference.standard_normal(8))


class TestCorruptionDetection:
    def test_truncation_by_one_byte(self, tmp_path):
        ckpt, _ = make_checkpoint()
        data = checkpoint_bytes(ckpt)
        with pytest.raises(CheckpointError, match="body has"):
            parse_checkpoint(data[:-1])

    def test_heavy_truncation(self):
        ckpt, _ = make_checkpoint()
        data = checkpoint_bytes(ckpt)
        with pytest.raises(CheckpointError, match="truncated"):
            parse_checkpoint(data[:10])

    def test_flipped_byte_fails_checksum(self):
        ckpt, _ = make_checkpoint()
        data = bytearray(checkpoint_bytes(ckpt))
        data[len(data) // 2] ^= 0xFF
        with pytest.raises(CheckpointError, match="checksum mismatch"):
            parse_checkpoint(bytes(data))

    def test_bad_magic(self):
        ckpt, _ = make_checkpoint()
        data = b"NOTMAGIC" + checkpoint_bytes(ckpt)[8:]
        with pytest.raises(CheckpointError, match="bad magic"):
            parse_checkpoint(data)

    def test_unsupported_version(self):
        ckpt, _ = make_checkpoint()
        data = bytearray(checkpoint_bytes(ckpt))
        data[8] = 99
        # version change invalidates nothing else, so patch is pre-CRC
        with pytest.raises(CheckpointError, match="version 99"):
            parse_checkpoint(bytes(data))

    def test_missing_file(self, tmp_path):
        with pytest.raises(OSError):
            load_checkpoint(str(tmp_path / "nope.ckpt"))


class TestShapeValidation:
    def test_dimension_mismatch_names_array(self):
        ckpt, _ = make_checkpoint(d=6, k=4, n=2)
        expect = TrainingConfig(d=6, k=8, n=2)
        with pytest.raises(CheckpointError, match="layer1.left"):
            build_model(parse_checkpoint(checkpoint_bytes(ckpt)), config=expect)

    def test_missing_array_rejected(self):
        ckpt, _ = make_checkpoint()
        del ckpt.arrays["u"]
        with pytest.raises(CheckpointError, match="missing parameter arrays.*u"):
            build_model(ckpt)

    def test_vocabulary_must_start_with_unknown(self):
        ckpt, _ = make_checkpoint()
        ckpt.vocab_words = ckpt.vocab_words[1:]
        with pytest.raises(CheckpointError, match="must start with"):
            build_model(ckpt)
