String name = user.getName();
if (name != null) {
  process(name.trim());
}
