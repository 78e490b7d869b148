from injector import Binder
from pydantic_settings import BaseSettings, SettingsConfigDict


class ChangepointSettings(BaseSettings):
    model_config = SettingsConfigDict(env_prefix="CHANGEPOINTS_")

    LOG_LEVEL: str = "INFO"
    WORKERS: int = 1
    PRIOR_HORIZON: int = 64
    TRACE_FILENAME: str = "trace.jsonl"


def provide_config(binder: Binder):
    binder.bind(ChangepointSettings)
