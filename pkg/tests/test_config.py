import pytest

from config import Settings, load_settings, read_config


def test_defaults(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    settings = load_settings(env={})
    assert settings == Settings()


def test_file_env_and_flags_layer(tmp_path):
    conf = tmp_path / "pg.conf"
    conf.write_text("# run settings\ncap = 5_000\nthreads=3  # workers\n\ncache_bytes=1024\n")
    assert read_config(conf) == {"cap": 5000, "threads": 3, "cache_bytes": 1024}
    assert load_settings(conf, env={}).cap == 5000
    assert load_settings(conf, env={"PG_CAP": "700"}).cap == 700
    settings = load_settings(conf, env={"PG_CAP": "700"}, overrides={"cap": 90, "threads": None})
    assert (settings.cap, settings.threads) == (90, 3)


@pytest.mark.parametrize("text", ["cap", "colour=red", "cap=lots"])
def test_bad_config_files(tmp_path, text):
    conf = tmp_path / "bad.conf"
    conf.write_text(text)
    with pytest.raises(ValueError):
        read_config(conf)


def test_settings_validation():
    with pytest.raises(ValueError):
        Settings(cap=0)
    with pytest.raises(ValueError):
        Settings(threads=0)
    with pytest.raises(ValueError):
        load_settings(env={"PG_CAP": "-5"})


def test_missing_explicit_file(tmp_path):
    with pytest.raises(OSError):
        load_settings(tmp_path / "absent.conf", env={})
