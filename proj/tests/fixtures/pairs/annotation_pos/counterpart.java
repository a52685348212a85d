@SuppressWarnings("unchecked")
public List load() {
  return items;
}
