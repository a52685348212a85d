String json = AssetUtils.loadJSONFromAsset(context, "data.json");
JSONObject obj = new JSONObject(json);
JSONArray items = obj.getJSONArray("items");
List<String> names = new ArrayList<>();
for (int i = 0; i < items.length(); i++) {
  names.add(items.getString(i));
}
