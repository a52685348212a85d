public static List<String> sortByLength(List<String> words, int limit) {
    List<String> copy = new ArrayList<>(words);
    Collections.sort(copy, (left, right) -> left.length() - right.length());
    List<String> result = new ArrayList<>();
    for (int i = 0; i < copy.size() && i < limit; i++) {
        result.add(copy.get(i).trim());
    }
    return result;
}
