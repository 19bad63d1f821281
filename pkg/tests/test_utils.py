import logging

from src.utils import ensure_dirs, load_config, setup_logging, substitute_env_vars


def test_substitute_env_vars(monkeypatch):
    monkeypatch.setenv("FLEXION_TEST_DIR", "/tmp/flex")
    monkeypatch.delenv("FLEXION_UNSET", raising=False)
    assert substitute_env_vars("${FLEXION_TEST_DIR:./out}/reports") == "/tmp/flex/reports"
    assert substitute_env_vars("${FLEXION_UNSET:./out}/reports") == "./out/reports"
    assert substitute_env_vars(16) == 16


def test_load_config_substitutes_nested_values(tmp_path, monkeypatch):
    monkeypatch.setenv("FLEXION_PRIME", "2147483647")
    path = tmp_path / "config.yaml"
    path.write_text("field:\n  prime: \"${FLEXION_PRIME:7}\"\nverify:\n  lengths: [\"${MISSING_VAR:6}\"]\n")
    cfg = load_config(str(path))
    assert cfg["field"]["prime"] == "2147483647"
    assert cfg["verify"]["lengths"] == ["6"]


def test_repository_config_is_found(monkeypatch, tmp_path):
    monkeypatch.chdir(tmp_path)
    cfg = load_config("config.yaml")
    assert cfg["verify"]["gaxit_form"] == "sigma"
    assert cfg["series"]["order"] == 12


def test_setup_logging_writes_file(tmp_path):
    log_file = tmp_path / "logs" / "flexion.log"
    setup_logging({"logging": {"level": "debug", "file": str(log_file)}})
    logging.getLogger("src.test").debug("hello")
    for handler in logging.getLogger().handlers:
        handler.flush()
    assert "hello" in log_file.read_text()


def test_ensure_dirs(tmp_path):
    ensure_dirs(tmp_path / "a" / "b", tmp_path / "c")
    assert (tmp_path / "a" / "b").is_dir() and (tmp_path / "c").is_dir()


def test_empty_config_is_an_empty_mapping(tmp_path):
    path = tmp_path / "empty.yaml"
    path.write_text("")
    assert load_config(str(path)) == {}
