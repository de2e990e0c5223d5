from hypothesis import settings

settings.register_profile("twistlab", deadline=None)
settings.load_profile("twistlab")
